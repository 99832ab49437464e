from . import Term, occupations


class SelfInteraction0(Term):
    TERM_NAME = "self0"
    TERM_KEY = "V00"
    BANDWIDTH = 0
    DESCRIPTION = "(a0+ a0)^2"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        n0, _ = occupations(N)
        d0[:] = n0**2
        return d0, d1, d2


class SelfInteraction1(Term):
    TERM_NAME = "self1"
    TERM_KEY = "V11"
    BANDWIDTH = 0
    DESCRIPTION = "(a1+ a1)^2"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        _, n1 = occupations(N)
        d0[:] = n1**2
        return d0, d1, d2


class Contact(Term):
    TERM_NAME = "contact"
    TERM_KEY = "V01"
    BANDWIDTH = 0
    DESCRIPTION = "a1+ a1 a0+ a0"

    @classmethod
    def bands(cls, N):
        d0, d1, d2 = cls.empty_bands(N)
        n0, n1 = occupations(N)
        d0[:] = n0 * n1
        return d0, d1, d2
