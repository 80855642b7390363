"""Каноническая печать сценария: parse(print(s)) == s."""
from typing import Optional, Sequence, Tuple

from src.session import nodes


def _group(term) -> str:
    if isinstance(term, nodes.GroupLiteral):
        return "<" + ", ".join(term.generators) + ">"
    return term.name


def _base_field(term) -> str:
    if isinstance(term, nodes.Ref):
        return term.name
    text = "Q" if term.order is None else f"GF({term.order})"
    if term.parameters:
        text += "(" + ", ".join(term.parameters) + ")"
    return text


def _optional_group(term) -> str:
    return "" if term is None else f", {_group(term)}"


def _typed(items: Sequence[Tuple[str, Optional[str]]]) -> str:
    return ", ".join(name if value is None else f"{name}: {value}" for name, value in items)


def _relators(relators: Sequence[str]) -> str:
    return "(" + ", ".join(relators) + ")"


def print_expr(value: nodes.Expr) -> str:
    if isinstance(value, nodes.GroupLiteral):
        return _group(value)
    if isinstance(value, nodes.BaseFieldExpr):
        return _base_field(value)
    if isinstance(value, nodes.TrivialFieldExpr):
        return f"trivial({_base_field(value.base)}{_optional_group(value.group)})"
    if isinstance(value, nodes.PadicFieldExpr):
        return f"padic({value.prime}{_optional_group(value.group)})"
    if isinstance(value, nodes.LaurentFieldExpr):
        return (f"laurent({_base_field(value.residue)}, {value.t_norm}, {value.precision}"
                f"{_optional_group(value.group)})")
    if isinstance(value, nodes.CorpoidExpr):
        tail = ""
        if value.sections:
            tail = ", " + _typed(value.sections)
        elif value.group is not None:
            tail = ", " + _group(value.group)
        return f"split({_base_field(value.base)}{tail})"
    if isinstance(value, nodes.ValuationExpr):
        if value.kind == "trivial":
            return f"trivial({_base_field(value.target)})"
        if value.kind == "tadic":
            return f"tadic({_base_field(value.target)}, {value.parameter}: {value.value})"
        if value.kind == "lex":
            return f"lex({_base_field(value.target)}, {value.height})"
        return f"padic({value.prime})"
    if isinstance(value, nodes.GaussExpr):
        radii = "".join(f", {name}: {degree} -> {gamma}" for name, degree, gamma in value.variables)
        return f"gauss(base={value.base.name}{radii})"
    if isinstance(value, nodes.TateExpr):
        text = f"{value.field.name}{{{_typed(value.variables)}}}"
        if value.relators:
            text += " / " + _relators(value.relators)
        return text
    if isinstance(value, nodes.PresentExpr):
        open_, close = ("{", "}") if value.braces else ("[", "]")
        return f"{value.over.name}{open_}{_typed(value.variables)}{close} / {_relators(value.relators)}"
    if isinstance(value, nodes.Ref):
        return value.name
    raise TypeError(f"Неизвестный узел {value!r}")


def _fiber(spec: nodes.FiberSpec) -> str:
    body = ", ".join(f"{name}={value}" for name, value in spec.assignments)
    return body if len(spec.assignments) == 1 else f"({body})"


def print_command(command: nodes.Command) -> str:
    parts = [command.verb]
    if command.mode:
        parts.append(command.mode)
    parts.append(command.target)
    if command.over:
        parts += ["over", command.over]
    if command.fibers:
        parts += ["with", "fibers", "[" + ", ".join(_fiber(f) for f in command.fibers) + "]"]
    if command.witnesses:
        parts += ["witnesses", "[" + ", ".join(command.witnesses) + "]"]
    if command.radius is not None:
        parts += ["radius", command.radius, "bound", str(command.bound)]
    return " ".join(parts)


def print_statement(statement: nodes.Statement) -> str:
    if isinstance(statement, nodes.Declaration):
        return f"{statement.keyword} {statement.name} = {print_expr(statement.value)};"
    return print_command(statement) + ";"


def print_session(session: nodes.Session) -> str:
    return "".join(print_statement(s) + "\n" for s in session.statements)
