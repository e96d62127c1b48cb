"""Reduced words in the rank-2 free group and its complex group ring.

Words are tuples of letters ``(generator, exponent)`` with generator ``"u"``
or ``"v"`` and exponent ``+1`` or ``-1``, kept freely reduced at all times.
Group-ring elements are finite complex combinations of words with exact
dictionary arithmetic; a small text grammar round-trips through
:func:`parse_element` / :func:`format_element`.
"""

from __future__ import annotations

import re

GENERATORS = ("u", "v")

# Canonical letter order used for printing and term sorting.
_LETTER_RANK = {("u", 1): 0, ("u", -1): 1, ("v", 1): 2, ("v", -1): 3}

# Guard for the parser: exponents expand into letter sequences.
MAX_EXPONENT = 2**16


class ParseError(ValueError):
    """Raised on malformed element text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _check_letter(letter):
    try:
        gen, exp = letter
    except (TypeError, ValueError):
        raise ValueError(f"letter must be a (generator, exponent) pair, got {letter!r}")
    if gen not in GENERATORS or exp not in (1, -1):
        raise ValueError(f"invalid letter {letter!r}")
    return gen, exp


def reduce_letters(letters):
    """Freely reduce a letter sequence by cancelling adjacent inverse pairs."""
    stack = []
    for letter in letters:
        gen, exp = _check_letter(letter)
        if stack and stack[-1] == (gen, -exp):
            stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


class Word:
    """A freely reduced word; the empty word is the group identity."""

    __slots__ = ("letters",)

    def __init__(self, letters=(), *, _reduced=False):
        if _reduced:
            object.__setattr__(self, "letters", tuple(letters))
        else:
            object.__setattr__(self, "letters", reduce_letters(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls):
        return cls((), _reduced=True)

    @property
    def is_identity(self):
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def inverse(self):
        inv = tuple((gen, -exp) for gen, exp in reversed(self.letters))
        # The inverse of a reduced word is already reduced.
        return Word(inv, _reduced=True)

    def generator_sums(self):
        """Total exponent of each generator: returns ``(sum_u, sum_v)``."""
        p = sum(exp for gen, exp in self.letters if gen == "u")
        q = sum(exp for gen, exp in self.letters if gen == "v")
        return p, q

    def sort_key(self):
        """Length, then letter order u < u^-1 < v < v^-1."""
        return (len(self.letters), tuple(_LETTER_RANK[l] for l in self.letters))

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({self.letters!r})"

    def __str__(self):
        if not self.letters:
            return "1"
        runs = []
        for gen, exp in self.letters:
            if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (exp > 0):
                runs[-1][1] += exp
            else:
                runs.append([gen, exp])
        parts = []
        for gen, exp in runs:
            parts.append(gen if exp == 1 else f"{gen}^{exp}")
        return "*".join(parts)


class GroupRingElement:
    """A finite complex combination of reduced words.

    Terms live in a plain dict ``{Word: complex}``; coefficients that are
    exactly zero are dropped so equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if not isinstance(word, Word):
                    raise TypeError(f"keys must be Word, got {type(word).__name__}")
                c = complex(coeff)
                if c != 0:
                    clean[word] = clean.get(word, 0j) + c
                    if clean[word] == 0:
                        del clean[word]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def from_scalar(cls, value):
        return cls({Word.identity(): complex(value)})

    @classmethod
    def from_word(cls, word, coeff=1):
        return cls({word: complex(coeff)})

    @property
    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        """Terms in canonical order (word length, then letter order)."""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def coefficient_l1(self):
        return sum(abs(c) for c in self.terms.values())

    def support_size(self):
        return len(self.terms)

    def adjoint(self):
        """Conjugate coefficients and invert words."""
        return GroupRingElement(
            {word.inverse(): coeff.conjugate() for word, coeff in self.terms.items()}
        )

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            out[word] = out.get(word, 0j) + coeff
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        if isinstance(other, GroupRingElement):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    prod = w1 * w2
                    out[prod] = out.get(prod, 0j) + c1 * c2
            return GroupRingElement(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = GroupRingElement.from_scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"GroupRingElement({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


def _coerce(value):
    if isinstance(value, GroupRingElement):
        return value
    if isinstance(value, (int, float, complex)):
        return GroupRingElement.from_scalar(value)
    return NotImplemented


def unit():
    """The ring unit: the identity word with coefficient 1."""
    return GroupRingElement.from_scalar(1)


def generator(name, exponent=1):
    """A single generator (or inverse) as a ring element."""
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}")
    if exponent not in (1, -1):
        raise ValueError("exponent must be +1 or -1")
    return GroupRingElement.from_word(Word(((name, exponent),), _reduced=True))


def averaging_element():
    """u + u^-1 + v + v^-1, the self-adjoint sum over generators and inverses."""
    return (
        generator("u")
        + generator("u", -1)
        + generator("v")
        + generator("v", -1)
    )


# --------------------------------------------------------------------------
# Text format: parsing
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<imag>i)
  | (?P<letter>[uv])
  | (?P<op>[+\-*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if match.lastgroup != "ws":
            kind = match.lastgroup
            value = match.group()
            if kind == "op":
                kind = value
            tokens.append((kind, value, pos))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self, ahead=0):
        i = self.index + ahead
        return self.tokens[i][0] if i < len(self.tokens) else None

    def next(self):
        if self.index >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.text))
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind):
        token = self.next()
        if token[0] != kind:
            raise ParseError(f"expected {kind!r}, got {token[1]!r}", token[2])
        return token

    def position(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index][2]
        return len(self.text)

    # expr := ['+'|'-'] term (('+'|'-') term)*
    def parse(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        result = self.term() * sign
        while self.peek() is not None:
            kind = self.peek()
            if kind not in ("+", "-"):
                raise ParseError(f"expected '+' or '-', got {self.tokens[self.index][1]!r}", self.position())
            self.next()
            sign = -1 if kind == "-" else 1
            result = result + self.term() * sign
        return result

    # term := coeff ['*' word] | word
    def term(self):
        kind = self.peek()
        if kind in ("number", "imag", "("):
            coeff = self.coefficient()
            if self.peek() == "*":
                self.next()
                return self.word() * coeff
            if self.peek() == "letter":
                raise ParseError("expected '*' between coefficient and word", self.position())
            return GroupRingElement.from_scalar(coeff)
        if kind == "letter":
            return self.word()
        if kind is None:
            raise ParseError("expected a term", self.position())
        raise ParseError(f"expected a term, got {self.tokens[self.index][1]!r}", self.position())

    # word := factor (['*'] factor)* | '1'
    def word(self):
        if self.peek() == "number":
            token = self.next()
            if float(token[1]) != 1.0:
                raise ParseError("only the word '1' may appear without a generator", token[2])
            return unit()
        letters = list(self.factor())
        while True:
            if self.peek() == "letter":
                letters.extend(self.factor())
            elif self.peek() == "*" and self.peek(1) == "letter":
                self.next()
                letters.extend(self.factor())
            else:
                break
        return GroupRingElement.from_word(Word(letters))

    # factor := ('u'|'v') ['^' signed-integer]
    def factor(self):
        token = self.expect("letter")
        gen = token[1]
        exp = 1
        if self.peek() == "^":
            self.next()
            exp = self.signed_integer()
        if abs(exp) > MAX_EXPONENT:
            raise ParseError("exponent overflow", token[2])
        sign = 1 if exp >= 0 else -1
        return tuple((gen, sign) for _ in range(abs(exp)))

    def signed_integer(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        token = self.expect("number")
        if not token[1].isdigit():
            raise ParseError(f"exponent must be an integer, got {token[1]!r}", token[2])
        return sign * int(token[1])

    # coeff := number ['i'] | 'i' | '(' complex ')'
    def coefficient(self):
        kind = self.peek()
        if kind == "number":
            token = self.next()
            value = float(token[1])
            if self.peek() == "imag":
                self.next()
                return complex(0.0, value)
            return complex(value, 0.0)
        if kind == "imag":
            self.next()
            return 1j
        if kind == "(":
            self.next()
            value = self.complex_literal()
            self.expect(")")
            return value
        raise ParseError("expected a coefficient", self.position())

    def complex_literal(self):
        real = 0.0
        imag = 0.0
        seen_real = False
        seen_imag = False

        def part():
            sign = 1.0
            if self.peek() in ("+", "-"):
                sign = -1.0 if self.next()[0] == "-" else 1.0
            if self.peek() == "imag":
                self.next()
                return sign * 1.0, True
            token = self.expect("number")
            value = sign * float(token[1])
            if self.peek() == "imag":
                self.next()
                return value, True
            return value, False

        value, is_imag = part()
        if is_imag:
            imag, seen_imag = value, True
        else:
            real, seen_real = value, True
        if self.peek() in ("+", "-"):
            value, is_imag = part()
            if is_imag:
                if seen_imag:
                    raise ParseError("duplicate imaginary part", self.position())
                imag = value
            else:
                if seen_real:
                    raise ParseError("duplicate real part", self.position())
                real = value
        return complex(real, imag)


def parse_element(text):
    """Parse element text like ``"2*u*v^-1 - i*u"`` into a GroupRingElement."""
    if not isinstance(text, str):
        raise TypeError("element text must be a string")
    parser = _Parser(text)
    if not parser.tokens:
        raise ParseError("empty input", 0)
    return parser.parse()


# --------------------------------------------------------------------------
# Text format: printing (canonical; parse(format_element(a)) == a)
# --------------------------------------------------------------------------


def _format_float(x):
    # repr() of a float is the shortest string that round-trips exactly.
    return repr(float(x))


def _format_term(word, coeff):
    """Return (sign, body) with sign in '+'/'-' and body carrying no sign."""
    word_txt = None if word.is_identity else str(word)
    re_, im = coeff.real, coeff.imag
    if im == 0:
        sign = "-" if re_ < 0 else "+"
        mag = abs(re_)
        if word_txt is not None and mag == 1.0:
            return sign, word_txt
        body = _format_float(mag)
    elif re_ == 0:
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        body = "i" if mag == 1.0 else _format_float(mag) + "i"
    else:
        sign = "+"
        im_sign = "-" if im < 0 else "+"
        body = f"({_format_float(re_)}{im_sign}{_format_float(abs(im))}i)"
    if word_txt is not None:
        body = f"{body}*{word_txt}"
    return sign, body


def format_element(element):
    """Canonical text for an element; terms sorted by word length then letters."""
    if element.is_zero:
        return "0"
    parts = []
    for word, coeff in element.sorted_terms():
        sign, body = _format_term(word, coeff)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
