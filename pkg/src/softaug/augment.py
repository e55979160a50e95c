"""The four EDA suboperations, the EDA dispatcher, and AEDA insertion.

All operations are pure functions of (input tokens, parameters, rng):
the caller owns the random stream, and identical seeds give identical
outputs. Magnitudes follow the n = max(1, round(alpha * L)) convention
with round-half-up ties.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .textops import SynonymLexicon, is_stopword

__all__ = [
    "SubOpKind",
    "EdaParams",
    "PUNCTUATION_MARKS",
    "synonym_replacement",
    "random_insertion",
    "random_swap",
    "random_deletion",
    "eda",
    "aeda",
]

PUNCTUATION_MARKS = (".", ";", "?", ":", "!", ",")


class SubOpKind(Enum):
    SR = "sr"
    RI = "ri"
    RS = "rs"
    RD = "rd"


@dataclass(frozen=True)
class EdaParams:
    alpha_sr: float
    alpha_ri: float
    alpha_rs: float
    alpha_rd: float
    p_eda: tuple[float, float, float, float]  # selection probs for SR, RI, RS, RD

    def __post_init__(self):
        for name in ("alpha_sr", "alpha_ri", "alpha_rs", "alpha_rd"):
            a = getattr(self, name)
            if not 0.0 <= a <= 1.0:
                raise DomainError(f"{name} must be in [0, 1], got {a}")
        if len(self.p_eda) != 4 or any(p < 0 for p in self.p_eda):
            raise DomainError("p_eda must be 4 non-negative components")
        if abs(sum(self.p_eda) - 1.0) > 1e-9:
            raise DomainError(f"p_eda must sum to 1, got {sum(self.p_eda)}")

    @staticmethod
    def uniform(alpha: float = 0.1) -> "EdaParams":
        return EdaParams(alpha, alpha, alpha, alpha, (0.25, 0.25, 0.25, 0.25))


def _require_nonempty(seq: list[str]):
    if not seq:
        raise DomainError("empty sentence")


def _num_ops(alpha: float, length: int) -> int:
    # round half up so ties resolve identically everywhere
    return max(1, math.floor(alpha * length + 0.5))


def synonym_replacement(
    seq: list[str], alpha: float, lex: SynonymLexicon, rng: random.Random
) -> list[str]:
    """Replace up to n distinct eligible words with a random synonym each.

    Eligible positions are non-stopwords with at least one synonym. With
    no eligible position the input is returned unchanged. Length is
    always preserved.
    """
    _require_nonempty(seq)
    n = _num_ops(alpha, len(seq))
    eligible = [i for i, tok in enumerate(seq) if not is_stopword(tok) and lex.synonyms(tok)]
    if not eligible:
        return list(seq)
    out = list(seq)
    for i in rng.sample(eligible, min(n, len(eligible))):
        out[i] = rng.choice(lex.synonyms(seq[i]))
    return out


def random_insertion(
    seq: list[str], alpha: float, lex: SynonymLexicon, rng: random.Random
) -> list[str]:
    """Insert synonyms of random eligible words at random positions, n times.

    Source words may repeat across insertions. If no word has a synonym,
    no insertion happens and the input is returned unchanged.
    """
    _require_nonempty(seq)
    n = _num_ops(alpha, len(seq))
    sources = [tok for tok in seq if not is_stopword(tok) and lex.synonyms(tok)]
    out = list(seq)
    if not sources:
        return out
    for _ in range(n):
        word = rng.choice(sources)
        syn = rng.choice(lex.synonyms(word))
        out.insert(rng.randint(0, len(out)), syn)
    return out


def random_swap(seq: list[str], alpha: float, rng: random.Random) -> list[str]:
    """Swap two uniformly chosen distinct positions, n times."""
    _require_nonempty(seq)
    if len(seq) < 2:
        return list(seq)
    out = list(seq)
    for _ in range(_num_ops(alpha, len(seq))):
        i, j = rng.sample(range(len(out)), 2)
        out[i], out[j] = out[j], out[i]
    return out


def random_deletion(seq: list[str], alpha: float, rng: random.Random) -> list[str]:
    """Delete each token independently with probability alpha.

    If every token would be deleted, one uniformly chosen token is kept,
    so the output is never empty. Survivor order is preserved.
    """
    _require_nonempty(seq)
    out = [tok for tok in seq if rng.random() >= alpha]
    if not out:
        out = [seq[rng.randrange(len(seq))]]
    return out


def eda(
    seq: list[str], params: EdaParams, lex: SynonymLexicon, rng: random.Random
) -> list[str]:
    """Sample one suboperation from p_eda and apply it with its magnitude.

    The selection consumes exactly one rng draw, so a one-hot p_eda is
    equivalent to calling the suboperation after that single draw.
    """
    _require_nonempty(seq)
    kind = _sample_subop(params.p_eda, rng)
    if kind is SubOpKind.SR:
        return synonym_replacement(seq, params.alpha_sr, lex, rng)
    if kind is SubOpKind.RI:
        return random_insertion(seq, params.alpha_ri, lex, rng)
    if kind is SubOpKind.RS:
        return random_swap(seq, params.alpha_rs, rng)
    return random_deletion(seq, params.alpha_rd, rng)


def _sample_subop(p_eda: tuple[float, ...], rng: random.Random) -> SubOpKind:
    r = rng.random()
    cum = 0.0
    kinds = list(SubOpKind)
    for kind, p in zip(kinds, p_eda):
        cum += p
        if r < cum:
            return kind
    return kinds[-1]  # guard against rounding at r ~ 1


def aeda(seq: list[str], rng: random.Random) -> list[str]:
    """Insert k random punctuation marks, k uniform in [1, max(1, L//3)].

    Original tokens are never altered or reordered: removing the inserted
    marks recovers the input exactly.
    """
    _require_nonempty(seq)
    k = rng.randint(1, max(1, len(seq) // 3))
    out = list(seq)
    for _ in range(k):
        mark = rng.choice(PUNCTUATION_MARKS)
        out.insert(rng.randint(0, len(out)), mark)
    return out
