"""
Reader for this tool's own canonical output.

Only the subset ``serialize_functional`` writes is accepted: prefix block, ontology header,
one axiom per line, closing parenthesis. Anything else is rejected.
"""
import re
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union
from urllib.parse import unquote

from src.errors import SerializationError, SourceSpan
from src.owl.model import (
    AnnotationAssertion,
    AnnotationProperty,
    Axiom,
    ClassExpression,
    Declaration,
    EntityRef,
    EntitySort,
    IntersectionOf,
    Named,
    Ontology,
    Only,
    Some,
    SubClassOf,
    UnionOf,
)

_PREFIX_LINE = re.compile(r"^Prefix\(([A-Za-z]*):=<([^<>\s]*)>\)$")
_HEADER_LINE = re.compile(r"^Ontology\(<([^<>\s]+)>$")
_TOKEN = re.compile(
    r"""
     (?P<ws>\ +)
    |(?P<open>\()
    |(?P<close>\))
    |(?P<full><[^<>\s]+>)
    |(?P<lit>"(?:[^"\\]|\\.)*"(?:\^\^[A-Za-z]*:[A-Za-z0-9_\-]+)?)
    |(?P<pname>[A-Za-z]*:(?:[A-Za-z0-9_]|%[0-9A-Fa-f]{2})(?:[A-Za-z0-9_\-]|%[0-9A-Fa-f]{2})*)
    |(?P<word>[A-Za-z]+)
    """,
    re.VERBOSE,
)

_LITERAL = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:\^\^(.+))?$')

_SORTS = {s.value: s for s in EntitySort}
_PROPERTIES = {p.value: p for p in AnnotationProperty}

# (functor, args) for applications, ("iri", str) and ("lit", value) for atoms
Node = Tuple[str, Any]


class _LineParser:
    def __init__(self, line: str, prefixes: Dict[str, str], span: SourceSpan):
        self.prefixes = prefixes
        self.span = span
        self.tokens = self._tokenize(line)
        self.pos = 0

    def error(self, message: str) -> SerializationError:
        return SerializationError(f"not canonical output: {message}", self.span)

    def _tokenize(self, line: str) -> List[Tuple[str, str]]:
        tokens: List[Tuple[str, str]] = []
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None:
                raise self.error(f"unexpected character {line[pos]!r} at column {pos + 1}")
            kind = m.lastgroup or ""
            if kind != "ws":
                tokens.append((kind, m.group()))
            pos = m.end()
        return tokens

    def _next(self) -> Tuple[str, str]:
        if self.pos >= len(self.tokens):
            raise self.error("unexpected end of line")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expand(self, pname: str) -> str:
        prefix, local = pname.split(":", 1)
        if prefix not in self.prefixes:
            raise self.error(f"undeclared prefix {prefix}:")
        return self.prefixes[prefix] + local

    def node(self) -> Node:
        kind, text = self._next()
        if kind == "full":
            return ("iri", text[1:-1])
        if kind == "pname":
            return ("iri", self.expand(text))
        if kind == "lit":
            return ("lit", self._literal(text))
        if kind == "word":
            if self._next()[0] != "open":
                raise self.error(f"expected '(' after {text}")
            args: List[Node] = []
            while self.pos < len(self.tokens) and self.tokens[self.pos][0] != "close":
                args.append(self.node())
            self._next()
            return (text, args)
        raise self.error(f"unexpected {text!r}")

    def _literal(self, text: str) -> Union[str, bool]:
        m = _LITERAL.match(text)
        if m is None:
            raise self.error(f"malformed literal {text}")
        value = re.sub(r"\\(.)", r"\1", m.group(1))
        datatype = m.group(2)
        if not datatype:
            return value
        if self.expand(datatype) == self.prefixes.get("xsd", "") + "boolean" and value == "true":
            return True
        raise self.error(f"unsupported typed literal {text}")

    def parse(self) -> Node:
        n = self.node()
        if self.pos != len(self.tokens):
            raise self.error("trailing tokens")
        return n


def _entity(node: Node, parser: _LineParser) -> EntityRef:
    if node[0] != "iri":
        raise parser.error(f"expected an IRI, got {node[0]}")
    iri = node[1]
    local = re.split(r"[#/]", iri)[-1]
    return EntityRef(label=unquote(local) or iri, iri=iri)


def _expression(node: Node, parser: _LineParser) -> ClassExpression:
    functor, args = node
    if functor == "iri":
        return Named(_entity(node, parser))
    if functor in ("ObjectSomeValuesFrom", "ObjectAllValuesFrom"):
        if len(args) != 2:
            raise parser.error(f"{functor} takes 2 arguments")
        kind = Some if functor == "ObjectSomeValuesFrom" else Only
        return kind(_entity(args[0], parser), _expression(args[1], parser))
    if functor in ("ObjectUnionOf", "ObjectIntersectionOf"):
        if len(args) < 2:
            raise parser.error(f"{functor} takes at least 2 operands")
        kind2 = UnionOf if functor == "ObjectUnionOf" else IntersectionOf
        return kind2(tuple(_expression(a, parser) for a in args))
    raise parser.error(f"unsupported class expression {functor}")


def _axiom(node: Node, parser: _LineParser) -> Axiom:
    functor, args = node
    if functor == "Declaration" and len(args) == 1 and args[0][0] in _SORTS and len(args[0][1]) == 1:
        return Declaration(_entity(args[0][1][0], parser), _SORTS[args[0][0]])
    if functor == "SubClassOf" and len(args) == 2:
        return SubClassOf(_entity(args[0], parser), _expression(args[1], parser))
    if functor == "AnnotationAssertion" and len(args) == 3:
        prop = _PROPERTIES.get(args[0][1]) if args[0][0] == "iri" else None
        if prop is None or args[2][0] != "lit":
            raise parser.error("unsupported annotation")
        try:
            return AnnotationAssertion(_entity(args[1], parser), prop, args[2][1])
        except ValueError as e:
            raise parser.error(str(e)) from None
    raise parser.error(f"unsupported axiom {functor}")


def read_functional(text: str, origin: str = "<owl>") -> Ontology:
    """
    Parse canonical functional-style output back into an Ontology.

    Raises:
        SerializationError: for anything outside the canonical subset
    """
    if not text.endswith("\n") or "\r" in text:
        raise SerializationError("not canonical output: expected LF line endings", SourceSpan(origin))
    lines = text[:-1].split("\n")
    prefixes: Dict[str, str] = {}
    i = 0
    while i < len(lines) and lines[i].startswith("Prefix("):
        m = _PREFIX_LINE.match(lines[i])
        if m is None:
            raise SerializationError("not canonical output: malformed prefix", SourceSpan(origin, i + 1))
        prefixes[m.group(1)] = m.group(2)
        i += 1
    if i >= len(lines) or lines[i] != "":
        raise SerializationError("not canonical output: expected a blank line after prefixes", SourceSpan(origin, i + 1))
    i += 1
    header = _HEADER_LINE.match(lines[i]) if i < len(lines) else None
    if header is None:
        raise SerializationError("not canonical output: expected Ontology(<iri>", SourceSpan(origin, i + 1))
    if lines[-1] != ")":
        raise SerializationError("not canonical output: missing closing parenthesis", SourceSpan(origin, len(lines)))
    axioms: List[Axiom] = []
    for lineno in range(i + 1, len(lines) - 1):
        span = SourceSpan(origin, lineno + 1)
        parser = _LineParser(lines[lineno], prefixes, span)
        axioms.append(_axiom(parser.parse(), parser))
    return Ontology(iri=header.group(1), axioms=tuple(axioms), prefixes=prefixes)


def read_functional_file(path: Union[str, Path]) -> Ontology:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as e:
        raise SerializationError(f"cannot read: {e.strerror}", SourceSpan(str(p))) from e
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise SerializationError(f"not canonical output: invalid UTF-8 at byte offset {e.start}", SourceSpan(str(p))) from e
    return read_functional(text, str(p))
