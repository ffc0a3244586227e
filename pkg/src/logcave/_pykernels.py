"""Pure-Python kernels on integer-scaled sequences.

A rational sequence is carried projectively, as an integer vector ``nums``
known only up to a positive factor.  L is homogeneous of degree two and
the sign, logconcavity and region tests are all invariant under positive
scaling, so the iteration never touches a denominator.  The vector is kept
free of common factors, and the bit budget is charged on the rational
iterate ``nums / |lead|`` where ``lead`` is the first nonzero entry.

Zeros before the lead stay zero and the lead only ever squares, so every
common factor that can appear later divides a power of the initial lead.
Knowing the primes of that one number is enough to strip contents and
to reduce ``nums / |lead|`` by valuations instead of big gcds.

``_ckernels.pyx`` mirrors this module line for line.
"""
from math import gcd

CERTIFIED = 0
REFUTED = 1
UNKNOWN_MAX_ITER = 2
UNKNOWN_BIT_BUDGET = 3


def apply_l_int(nums):
    m = len(nums)
    if m == 1:
        return [nums[0] * nums[0]]
    out = [nums[0] * nums[0]]
    for i in range(1, m - 1):
        out.append(nums[i] * nums[i] - nums[i - 1] * nums[i + 1])
    out.append(nums[m - 1] * nums[m - 1])
    return out


def _sign_q5(p, q):
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp if p * p > 5 * q * q else sq


def in_region_int(nums):
    """Region test on an unnormalized full sequence; False if not applicable."""
    m = len(nums)
    if m < 3:
        return False
    for v in nums:
        if v <= 0:
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


def reduced_bits(nums, den):
    """Total numerator+denominator bits of ``nums[i]/den`` in lowest terms."""
    total = 0
    for v in nums:
        g = gcd(v, den)
        total += (abs(v) // g).bit_length() + (den // g).bit_length()
    return total


def factor_small(n, limit=10000):
    """Split ``n > 0`` into ``[(p, e), ...]`` over primes below ``limit`` and a cofactor."""
    factors = []
    e = 0
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
        # no factor below sqrt(n), so n is prime
        factors.append((n, 1))
        n = 1
    return factors, n


def valuation(a, p, cap):
    """Return ``(m, a // p**m)`` with ``m = min(v_p(a), cap)`` for ``a > 0``.

    Climbs through ``p, p**2, p**4, ..`` and descends, so a large valuation
    costs O(log cap) divisions instead of one per factor.
    """
    pows = [p]
    top = p
    while (2 << len(pows)) <= cap + 1 and top.bit_length() * 2 <= a.bit_length() + 1:
        top = top * top
        pows.append(top)
    m = 0
    for i in range(len(pows) - 1, -1, -1):
        step = 1 << i
        while m + step <= cap:
            q, r = divmod(a, pows[i])
            if r:
                break
            a = q
            m += step
    return m, a


def leading_index(nums):
    for i, v in enumerate(nums):
        if v:
            return i
    return -1


def strip_content(nums, primes, rest):
    """Divide out the common factor of ``nums``.

    ``primes`` and ``rest`` come from factoring the initial lead; the content
    can only involve those.  A nontrivial ``rest`` falls back to a gcd.
    """
    for p in primes:
        if any(v % p for v in nums):
            continue
        c = -1
        for v in nums:
            if v:
                a = -v if v < 0 else v
                m, _ = valuation(a, p, a.bit_length() if c < 0 else c)
                c = m if c < 0 else min(c, m)
        if c > 0:
            d = p**c
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


def normalized_bits(nums, lead_at, primes, rest):
    """Total bits of ``nums[i] / |nums[lead_at]|`` in lowest terms."""
    if lead_at < 0:
        return len(nums)  # 0/1 costs one bit
    lead = nums[lead_at]
    lead = -lead if lead < 0 else lead
    exps = []
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
        for p, e in zip(primes, exps):
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


def classify_scaled(nums, max_iter, bit_budget):
    """Return ``(code, k)``; the same decision procedure as ``seqops.classify``.

    ``nums`` may carry any positive scale; only its direction matters.
    """
    nums = list(nums)
    lead_at = leading_index(nums)
    primes, rest = [], 1
    if lead_at >= 0:
        factors, rest = factor_small(abs(nums[lead_at]))
        primes = [p for p, _ in factors]
    nums = strip_content(nums, primes, rest)
    k = 0
    while True:
        # iterate k fails logconcavity iff it or L of it has a negative entry
        nxt = apply_l_int(nums)
        for v in nums:
            if v < 0:
                return REFUTED, k
        for v in nxt:
            if v < 0:
                return REFUTED, k
        if in_region_int(nums):
            return CERTIFIED, k
        # cheap upper bound first; exact size only when it might matter
        if lead_at >= 0:
            upper = len(nums) * abs(nums[lead_at]).bit_length()
            for v in nums:
                upper += v.bit_length()
            if upper > bit_budget and normalized_bits(nums, lead_at, primes, rest) > bit_budget:
                return UNKNOWN_BIT_BUDGET, k
        elif len(nums) > bit_budget:
            return UNKNOWN_BIT_BUDGET, k
        if k >= max_iter:
            return UNKNOWN_MAX_ITER, k
        nums = strip_content(nxt, primes, rest)
        k += 1
