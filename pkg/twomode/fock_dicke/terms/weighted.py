from . import Term, hop_elements, occupations


class Weighted0(Term):
    TERM_NAME = "weighted0"
    TERM_KEY = "T0"
    BANDWIDTH = 1
    DESCRIPTION = "a0+ a0 a0+ a1 + h.c."

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        n0, _ = occupations(N)
        d1[:] = n0[:-1] * hop_elements(N)
        return d0, d1, d2


class Weighted1(Term):
    """Mode-exchange image of weighted0, a0+ a1 a1+ a1 + h.c.

    The T1 coupling of the generic Hamiltonian uses the other ordering,
    a1+ a1 a0+ a1 + h.c., which equals this term minus tunnel1.
    """

    TERM_NAME = "weighted1"
    TERM_KEY = "T1"
    BANDWIDTH = 1
    DESCRIPTION = "a0+ a1 a1+ a1 + h.c."

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        _, n1 = occupations(N)
        d1[:] = n1[1:] * hop_elements(N)
        return d0, d1, d2
