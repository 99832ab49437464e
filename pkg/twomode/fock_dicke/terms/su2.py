from . import Term, hop_elements, occupations


class Jx(Term):
    TERM_NAME = "jx"
    TERM_KEY = "jx"
    BANDWIDTH = 1
    DESCRIPTION = "(a0+ a1 + a1+ a0) / 2"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        d1[:] = hop_elements(N) / 2
        return d0, d1, d2


class Jy(Term):
    TERM_NAME = "jy"
    TERM_KEY = "jy"
    BANDWIDTH = 1
    DESCRIPTION = "(i a0+ a1 - i a1+ a0) / 2"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        d1[:] = 0.5j * hop_elements(N)
        return d0, d1, d2


class Jz(Term):
    TERM_NAME = "jz"
    TERM_KEY = "jz"
    BANDWIDTH = 0
    DESCRIPTION = "(a1+ a1 - a0+ a0) / 2"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        n0, n1 = occupations(N)
        d0[:] = (n1 - n0) / 2
        return d0, d1, d2
