from . import Term, hop_elements, pair_elements


class Tunnel1(Term):
    TERM_NAME = "tunnel1"
    TERM_KEY = "A1"
    BANDWIDTH = 1
    DESCRIPTION = "a0+ a1 + a1+ a0 = 2 J_x"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        d1[:] = hop_elements(N)
        return d0, d1, d2


class Pair(Term):
    TERM_NAME = "pair"
    TERM_KEY = "A2"
    BANDWIDTH = 2
    DESCRIPTION = "a0+^2 a1^2 + a1+^2 a0^2 = J+^2 + J-^2"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        d2[:] = pair_elements(N)
        return d0, d1, d2
