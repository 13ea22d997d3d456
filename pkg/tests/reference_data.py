"""Reference prime lists by label and explicit witness polynomials."""

from circdet.poly import IntPoly


def _ints(text):
    return [int(x) for x in text.replace("\n", " ").replace(",", " ").split()]


PERISSADS = _ints("""
11, 31, 41, 61, 71, 101, 131, 151, 181, 191, 241, 251, 271, 311,
331, 401, 431, 491, 541, 571, 601, 631, 641, 661, 701, 751, 761, 811,
821, 911, 941, 971, 1021, 1051, 1061, 1091, 1171, 1181, 1201, 1231,
1291, 1301, 1321, 1361, 1381, 1451, 1471, 1481, 1531, 1571, 1621,
1721, 1741, 1801, 1811, 1831, 1861, 1901, 1931, 2011, 2081, 2111,
2131, 2141, 2161, 2251, 2281, 2311, 2341, 2351, 2371, 2381, 2411,
2441, 2521, 2531, 2551, 2621, 2671, 2711, 2731, 2741, 2791, 2801,
2851, 2861, 2971, 3011, 3041, 3061, 3121, 3181, 3191, 3221, 3271,
3301, 3331, 3361, 3371, 3391, 3461, 3491, 3511, 3541, 3581, 3631,
3671, 3691, 3701, 3761, 3821, 3881, 3911, 3931, 4001, 4051, 4091,
4111, 4201, 4211, 4231, 4241, 4261, 4271, 4421, 4451, 4561, 4591,
4721, 4801, 4831, 4861, 4931, 4951
""")

ARTIADS = _ints("""
211, 281, 421, 461, 521, 691, 881, 991, 1031, 1151, 1511, 1601, 1871, 1951, 2221,
2591, 3001, 3251, 3571, 3851, 4021, 4391, 4441, 4481, 4621, 4651, 4691, 4751, 4871
""")

MOD9_TYPE1 = _ints("""
19, 37, 109, 127, 163, 181, 199, 379, 397, 433, 487, 541, 631, 739, 811, 829, 883,
937, 1063, 1153, 1171, 1279, 1297, 1423, 1459, 1567, 1657, 1693, 1747, 1801, 1873,
1999, 2017, 2053, 2089, 2143, 2161, 2377, 2467, 2503, 2521, 2539, 2557, 2593, 2647,
2683, 2719, 2791, 2917, 2953, 3061, 3169, 3259, 3313, 3331, 3457, 3511, 3547, 3583,
3637, 3673, 3691, 3709, 3727, 3943, 4051, 4159, 4231, 4357, 4447, 4519, 4591, 4663,
4789, 4861, 4987
""")

MOD9_TYPE3 = _ints("""
73, 271, 307, 523, 577, 613, 757, 919, 1009, 1531, 1621, 1783, 2179,
2287, 2971, 3079, 3187, 3529, 3853, 3889, 4177, 4339, 4951, 4969
""")

MOD9_TYPE4 = _ints("991, 1117, 1549, 2251, 2269, 2341, 3907, 4483, 4933")

MOD4_TYPE1 = _ints("""
13, 31, 139, 157, 211, 229, 283, 337, 373, 409, 463, 571, 607, 733,
751, 769, 823, 859, 877, 1039, 1129, 1201, 1237, 1291, 1327, 1381,
1453, 1471, 1489, 1579, 1723, 1741, 1777, 1831, 1993, 2011, 2083,
2137, 2281, 2371, 2551, 2659, 2677, 2731, 2749, 2767, 2857, 3037,
3163, 3271, 3307, 3361, 3433, 3469, 3541, 3559, 3613, 3793, 3919,
4027, 4153, 4243, 4261, 4297, 4423, 4441, 4549, 4567, 4603, 4621,
4639, 4657, 4801, 4909, 4999
""")

MOD4_TYPE2 = _ints("""
67, 103, 193, 499, 643, 661, 787, 967, 1021, 1093, 1399, 1543, 1597,
1669, 1759, 1867, 2029, 2389, 2713, 2803, 3001, 3019, 3109, 3181,
3217, 3253, 3343, 3631, 3739, 3847, 4099, 4513, 4729, 4783
""")

MOD7_TYPE1 = _ints("""
7, 43, 79, 97, 223, 241, 277, 313, 331, 349, 421, 457, 601, 673,
691, 709, 907, 1033, 1051, 1069, 1087, 1123, 1213, 1231, 1429, 1447,
1483, 1627, 1663, 1699, 1753, 1789, 1951, 1987, 2113, 2239, 2293,
2311, 2347, 2437, 2473, 2689, 2707, 2797, 2833, 2887, 3121, 3229,
3301, 3391, 3463, 3571, 3643, 3697, 3769, 3823, 3877, 3931, 4003,
4021, 4111, 4129, 4201, 4219, 4273, 4327, 4363, 4507, 4561, 4597,
4651, 4723, 4759, 4813, 4831, 4903
""")

MOD7_TYPE2 = _ints("""
61, 151, 367, 439, 547, 619, 727, 853, 997, 1249, 1303, 1321, 1609,
1861, 1879, 1933, 2131, 2203, 2221, 2383, 2617, 2671, 2851, 3049,
3067, 3319, 3373, 3499, 3517, 3607, 3733, 3967, 4057, 4093, 4957,
4993
""")


def poly(terms):
    """Build an IntPoly from {exponent: coefficient}."""
    deg = max(terms)
    return IntPoly(tuple(terms.get(k, 0) for k in range(deg + 1)))


def _ones(exps, neg=()):
    d = {e: 1 for e in exps}
    d.update({e: -1 for e in neg})
    return d


# (q, p, t, v, F): M_{p^t}(F) = q * p^v
KNOWN_WITNESSES = [
    (11, 5, 2, 3, poly(_ones([0, 4, 5, 9, 10]))),
    (31, 5, 2, 3, poly(_ones([1, 6, 9, 11, 13, 16], neg=[0]))),
    (41, 5, 2, 3, poly(_ones([0, 5, 10, 14, 15]))),
    (61, 5, 2, 3, poly(_ones([1, 6, 8, 11, 12, 16], neg=[0]))),
    (71, 5, 2, 3, poly(_ones([4, 7, 9, 11, 12, 13, 14, 18], neg=[0, 1, 5]))),
    (19, 3, 3, 4, poly(_ones([0, 8, 9]))),
    (37, 3, 3, 4, poly(_ones([2, 3, 10, 11], neg=[0]))),
    (109, 3, 3, 4, poly(_ones([0, 3, 4]))),
    (73, 3, 3, 5, poly(_ones([0, 2, 3, 4, 5, 7, 9, 11, 12]))),
    (271, 3, 3, 5, poly(_ones([0, 1, 2, 3, 4, 5, 6, 8, 9]))),
    (307, 3, 3, 5, poly(_ones([1, 4, 5, 6, 7, 8, 10, 12, 14, 15], neg=[0]))),
    (7, 3, 3, 5, poly(_ones([0, 2, 3, 5, 6, 8, 9, 11, 12]))),
    (13, 3, 3, 5, poly(_ones([0, 3, 6, 9, 12, 14, 15, 17, 18]))),
    (19, 3, 3, 5, poly(_ones([0, 3, 6, 9, 12, 15, 18, 20, 21]))),
    (31, 3, 3, 5, poly(_ones([2, 5, 7, 8, 10, 11, 12, 13, 14, 17, 20, 23, 26], neg=[0, 1, 3, 6]))),
]
