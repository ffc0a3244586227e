# cython: language_level=3, boundscheck=False, wraparound=False
# Compiled twin of _pykernels.py; keep the two in lockstep.
from math import gcd

cdef int CERTIFIED = 0
cdef int REFUTED = 1
cdef int UNKNOWN_MAX_ITER = 2
cdef int UNKNOWN_BIT_BUDGET = 3


cpdef list apply_l_int(list nums):
    cdef Py_ssize_t m = len(nums)
    cdef Py_ssize_t i
    cdef list out
    if m == 1:
        return [nums[0] * nums[0]]
    out = [None] * m
    out[0] = nums[0] * nums[0]
    for i in range(1, m - 1):
        out[i] = nums[i] * nums[i] - nums[i - 1] * nums[i + 1]
    out[m - 1] = nums[m - 1] * nums[m - 1]
    return out


cdef int _sign_q5(object p, object q):
    cdef int sp = (p > 0) - (p < 0)
    cdef int sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp if p * p > 5 * q * q else sq


cpdef bint in_region_int(list nums):
    cdef Py_ssize_t m = len(nums)
    cdef Py_ssize_t i, j, n
    cdef bint odd
    cdef object one, prod, v
    if m < 3:
        return False
    for i in range(m):
        if nums[i] <= 0:
            return False
    for i in range(m // 2):
        if nums[i] != nums[m - 1 - i]:
            return False
    odd = m % 2
    n = (m - 3) // 2 if odd else (m - 4) // 2
    one = nums[0]
    if n == 0:
        if odd:
            return _sign_q5(2 * nums[1] - one, -one) >= 0
        return nums[1] >= 2 * one
    for j in range(n + 1):
        if nums[j + 1] <= nums[j]:
            return False
    for i in range(1, m - 1):
        if nums[i] * nums[i] <= nums[i - 1] * nums[i + 1]:
            return False
    for j in range(n):
        prod = nums[j] * nums[j + 2]
        if _sign_q5(2 * nums[j + 1] * nums[j + 1] - 3 * prod, -prod) <= 0:
            return False
    if odd:
        return _sign_q5(2 * nums[n + 1] - nums[n], -nums[n]) > 0
    return nums[n + 1] > 2 * nums[n]


cpdef object reduced_bits(list nums, object den):
    cdef object total = 0
    cdef object g, v
    for v in nums:
        g = gcd(v, den)
        total += (abs(v) // g).bit_length() + (den // g).bit_length()
    return total


def factor_small(object n, long limit=10000):
    cdef list factors = []
    cdef long e = 0
    cdef long p
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        factors.append((2, e))
    p = 3
    while p < limit and p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            factors.append((p, e))
        p += 2
    if 1 < n < limit * limit:
        factors.append((n, 1))
        n = 1
    return factors, n


cpdef tuple valuation(object a, object p, object cap):
    cdef list pows = [p]
    cdef Py_ssize_t i
    cdef object m = 0
    cdef object step, q, r
    cdef object top = p
    # no negative indexing here: the module is compiled with wraparound=False
    while (2 << len(pows)) <= cap + 1 and top.bit_length() * 2 <= a.bit_length() + 1:
        top = top * top
        pows.append(top)
    for i in range(len(pows) - 1, -1, -1):
        step = 1 << i
        while m + step <= cap:
            q, r = divmod(a, pows[i])
            if r:
                break
            a = q
            m += step
    return m, a


cpdef Py_ssize_t leading_index(list nums):
    cdef Py_ssize_t i
    for i in range(len(nums)):
        if nums[i]:
            return i
    return -1


cpdef list strip_content(list nums, list primes, object rest):
    cdef object p, v, a, m, c, d, g
    cdef bint divisible
    for p in primes:
        divisible = True
        for v in nums:
            if v % p:
                divisible = False
                break
        if not divisible:
            continue
        c = -1
        for v in nums:
            if v:
                a = -v if v < 0 else v
                m = valuation(a, p, a.bit_length() if c < 0 else c)[0]
                c = m if c < 0 else min(c, m)
        if c > 0:
            d = p ** c
            nums = [v // d for v in nums]
    if rest != 1:
        g = 0
        for v in nums:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            nums = [v // g for v in nums]
    return nums


cpdef object normalized_bits(list nums, Py_ssize_t lead_at, list primes, object rest):
    cdef list exps = []
    cdef object lead, total, v, a, den_red, p, e, m, g
    cdef Py_ssize_t i
    if lead_at < 0:
        return len(nums)
    lead = nums[lead_at]
    lead = -lead if lead < 0 else lead
    for p in primes:
        e, lead = valuation(lead, p, lead.bit_length())
        exps.append(e)
    total = 0
    for v in nums:
        if v == 0:
            total += 1
            continue
        a = -v if v < 0 else v
        den_red = 1
        for i in range(len(primes)):
            p = primes[i]
            e = exps[i]
            if e == 0:
                continue
            if p == 2:
                m = (a & -a).bit_length() - 1
                if m > e:
                    m = e
                a >>= m
            else:
                m, a = valuation(a, p, e)
            if m < e:
                den_red *= p ** (e - m)
        if lead != 1:
            g = gcd(a, lead)
            a //= g
            den_red *= lead // g
        total += a.bit_length() + den_red.bit_length()
    return total


def classify_scaled(nums, Py_ssize_t max_iter, object bit_budget):
    cdef list cur = list(nums)
    cdef Py_ssize_t k = 0
    cdef Py_ssize_t m = len(cur)
    cdef Py_ssize_t lead_at = leading_index(cur)
    cdef list primes = []
    cdef list factors, nxt
    cdef object rest = 1
    cdef object upper, v
    if lead_at >= 0:
        factors, rest = factor_small(abs(cur[lead_at]))
        primes = [f[0] for f in factors]
    cur = strip_content(cur, primes, rest)
    while True:
        nxt = apply_l_int(cur)
        for v in cur:
            if v < 0:
                return REFUTED, k
        for v in nxt:
            if v < 0:
                return REFUTED, k
        if in_region_int(cur):
            return CERTIFIED, k
        if lead_at >= 0:
            upper = m * abs(cur[lead_at]).bit_length()
            for v in cur:
                upper += v.bit_length()
            if upper > bit_budget and normalized_bits(cur, lead_at, primes, rest) > bit_budget:
                return UNKNOWN_BIT_BUDGET, k
        elif m > bit_budget:
            return UNKNOWN_BIT_BUDGET, k
        if k >= max_iter:
            return UNKNOWN_MAX_ITER, k
        cur = strip_content(nxt, primes, rest)
        k += 1
