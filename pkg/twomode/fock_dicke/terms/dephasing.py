from . import Term, occupations


class Dephasing(Term):
    TERM_NAME = "dephasing"
    TERM_KEY = "vartheta"
    BANDWIDTH = 0
    DESCRIPTION = "a1+ a1 - a0+ a0 = 2 J_z"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        n0, n1 = occupations(N)
        d0[:] = n1 - n0
        return d0, d1, d2
