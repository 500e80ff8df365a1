class LemmaViolation(AssertionError):
    """A computed quantity disagrees with the closed form of a numbered lemma."""

    def __init__(self, lemma: int, detail: str = ""):
        self.lemma = lemma
        super().__init__(f"lemma {lemma} violated: {detail}" if detail else f"lemma {lemma} violated")


class TheoremViolation(AssertionError):
    def __init__(self, theorem: int, detail: str = ""):
        self.theorem = theorem
        super().__init__(f"theorem {theorem} violated: {detail}" if detail else f"theorem {theorem} violated")


class NotReducible(ArithmeticError):
    """Convolution coefficients are not constant on the classes needed to collapse a character sum."""
