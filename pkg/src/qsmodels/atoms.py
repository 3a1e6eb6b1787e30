"""Ground terms, answer sets, and the solver-output parser.

Atom grammar (nested functional terms):

    atom := ident | ident '(' term { ',' term } ')'
    term := atom | integer

Accepted solver output dialects:
  - classic smodels: a "Stable Model:" line of space-separated atoms,
    bare "False" for unsatisfiable
  - clasp/clingo: "Answer: N" followed by the atom line, with
    "UNSATISFIABLE" / "SATISFIABLE" status lines
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Term:
    """Symbol, integer literal, or functional term; args empty for constants."""

    name: str
    args: tuple[Term, ...] = ()

    def render(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(a.render() for a in self.args)})"


@dataclass(frozen=True)
class GroundAtom:
    predicate: str
    args: tuple[Term, ...] = ()

    def render(self) -> str:
        return Term(self.predicate, self.args).render()


@dataclass(frozen=True)
class AnswerSet:
    atoms: frozenset[GroundAtom]

    def with_predicate(self, predicate: str) -> list[GroundAtom]:
        return sorted(
            (a for a in self.atoms if a.predicate == predicate),
            key=lambda a: a.render(),
        )

    def render(self) -> str:
        return " ".join(sorted(a.render() for a in self.atoms))


class ParseError(Exception):
    def __init__(self, text: str, position: int, reason: str) -> None:
        super().__init__(f"at offset {position} near {text[position:position + 12]!r}: {reason}")
        self.position = position
        self.reason = reason


def _ident_end(text: str, start: int) -> int:
    i = start
    while i < len(text) and (text[i].isalnum() or text[i] == "_" or (i == start and text[i] == "-")):
        i += 1
    return i


def _parse_term(text: str, pos: int) -> tuple[Term, int]:
    end = _ident_end(text, pos)
    if end == pos:
        raise ParseError(text, pos, "expected identifier or integer")
    name = text[pos:end]
    if end < len(text) and text[end] == "(":
        args: list[Term] = []
        i = end + 1
        while True:
            term, i = _parse_term(text, i)
            args.append(term)
            if i >= len(text):
                raise ParseError(text, i, "unterminated argument list")
            if text[i] == ",":
                i += 1
                continue
            if text[i] == ")":
                return Term(name, tuple(args)), i + 1
            raise ParseError(text, i, "expected ',' or ')'")
    return Term(name), end


def parse_atom(text: str) -> GroundAtom:
    term, end = _parse_term(text, 0)
    if end != len(text):
        raise ParseError(text, end, "trailing characters after atom")
    return GroundAtom(term.name, term.args)


def parse_atom_line(line: str) -> frozenset[GroundAtom]:
    """Space-separated atoms (the model line of either dialect)."""
    atoms: set[GroundAtom] = set()
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        term, i = _parse_term(line, i)
        atoms.add(GroundAtom(term.name, term.args))
    return frozenset(atoms)


UNSAT = object()  # sentinel: parse succeeded, program has no model


def parse_answer_set(output: str) -> AnswerSet | object:
    """First model from complete solver output, or UNSAT."""
    lines = output.splitlines()
    expect_model_line = False
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("Stable Model:"):
            return AnswerSet(parse_atom_line(stripped[len("Stable Model:"):]))
        if expect_model_line:
            if not stripped:
                continue
            return AnswerSet(parse_atom_line(stripped))
        if stripped.startswith("Answer:"):
            expect_model_line = True
            continue
        if stripped == "False" or stripped == "UNSATISFIABLE":
            return UNSAT
    raise ParseError(output, 0, "no model line or unsat marker in solver output")
