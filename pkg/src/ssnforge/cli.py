"""Command-line front end: batch registration, export, query, metadata, serve.

Exit codes: 0 success, 1 I/O or store corruption, 2 validation or syntax
problems (violations listed one per line on stderr), 3 conflicts
(duplicate id, type in use), 4 not found. Results go to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .metadata import generate_metadata, render
from .ontology import (
    BadSlug,
    InvalidInstance,
    InvalidType,
    Namespaces,
    ShapeError,
    instance_from_json,
    type_from_json,
)
from .query import evaluate, parse_query
from .rdf import Iri, ParseError, serialize_nquads, serialize_ntriples, serialize_turtle
from .registry import (
    AlreadyExists,
    ConflictInUse,
    CorruptStore,
    NotFound,
    Registry,
    UnknownType,
)

EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_CONFLICT = 3
EXIT_NOT_FOUND = 4


class CliConfig:
    def __init__(self, data_dir: Path, base_iri: str):
        self.data_dir = data_dir
        try:
            self.namespaces = Namespaces(base_iri=Iri(base_iri))
        except ValueError as exc:
            raise click.UsageError(f"--base-iri: {exc}")

    def registry(self) -> Registry:
        return Registry(self.data_dir, self.namespaces)


def _fail(code: int, *lines: str):
    for line in lines:
        click.echo(line, err=True)
    sys.exit(code)


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InvalidType, InvalidInstance) as exc:
            _fail(EXIT_VALIDATION, *(f"{v.code}: {v.message}" for v in exc.violations))
        except UnknownType as exc:
            _fail(EXIT_VALIDATION, f"UNKNOWN_TYPE: {exc}")
        except (ShapeError, BadSlug) as exc:
            _fail(EXIT_VALIDATION, str(exc))
        except json.JSONDecodeError as exc:
            _fail(EXIT_VALIDATION, f"not valid JSON: {exc.msg} (line {exc.lineno})")
        except ParseError as exc:
            _fail(EXIT_VALIDATION, str(exc))
        except (AlreadyExists, ConflictInUse) as exc:
            _fail(EXIT_CONFLICT, str(exc))
        except NotFound as exc:
            _fail(EXIT_NOT_FOUND, str(exc))
        except CorruptStore as exc:
            _fail(EXIT_IO, str(exc))
        except OSError as exc:
            _fail(EXIT_IO, str(exc))

    return wrapper


def _load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _write_output(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8", newline="\n")


@click.group()
@click.option(
    "--data-dir",
    envvar="SSNFORGE_DATA_DIR",
    default="./data",
    show_default=True,
    type=click.Path(path_type=Path),
    help="Registry data directory (store.nq + index.json).",
)
@click.option(
    "--base-iri",
    envvar="SSNFORGE_BASE_IRI",
    default="http://example.org/oi/",
    show_default=True,
    help="Base IRI minted node IRIs start with.",
)
@click.pass_context
def main(ctx, data_dir: Path, base_iri: str):
    """Sensor schema registry: publish SSN-shaped sensor descriptions."""
    ctx.obj = CliConfig(data_dir, base_iri)


@main.group("type")
def type_group():
    """Sensor type commands."""


@main.group("instance")
def instance_group():
    """Sensor instance commands."""


@type_group.command("add")
@click.option("-f", "--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@_handle_errors
def type_add(cfg: CliConfig, path: str):
    """Register a sensor type from a definition JSON file."""
    definition = type_from_json(_load_json_file(path))
    entry = cfg.registry().register_type(definition)
    click.echo(f"{entry.id} {entry.iri.value} {len(entry.graph)} triples")


@type_group.command("update")
@click.option("-f", "--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@_handle_errors
def type_update(cfg: CliConfig, path: str):
    """Replace a registered sensor type from a definition JSON file."""
    definition = type_from_json(_load_json_file(path))
    entry = cfg.registry().update_type(definition)
    click.echo(f"{entry.id} {entry.iri.value} {len(entry.graph)} triples")


@instance_group.command("add")
@click.option("-f", "--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@_handle_errors
def instance_add(cfg: CliConfig, path: str):
    """Register a sensor instance from a definition JSON file."""
    definition = instance_from_json(_load_json_file(path))
    entry = cfg.registry().register_instance(definition)
    click.echo(f"{entry.id} {entry.iri.value} {len(entry.graph)} triples")


@main.command()
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["turtle", "ntriples", "nquads"]),
    default="turtle",
    show_default=True,
)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@_handle_errors
def export(cfg: CliConfig, fmt: str, output: str | None):
    """Export registered descriptions (union graph, or the full dataset as N-Quads)."""
    registry = cfg.registry()
    if fmt == "nquads":
        text = serialize_nquads(registry.dataset)
    elif fmt == "ntriples":
        text = serialize_ntriples(registry.dataset.union())
    else:
        text = serialize_turtle(registry.dataset.union())
    _write_output(text, output)


@main.command()
@click.option("-f", "--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@_handle_errors
def query(cfg: CliConfig, path: str):
    """Run a query file against the registry and print JSON bindings."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    q = parse_query(text)
    result = evaluate(q, cfg.registry().dataset)
    click.echo(json.dumps(result.to_json(), indent=2))


@main.command()
@click.argument("instance_id")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@_handle_errors
def metadata(cfg: CliConfig, instance_id: str, output: str | None):
    """Write the stream-annotator metadata file for a registered instance."""
    registry = cfg.registry()
    instance_entry = registry.get("instance", instance_id)
    type_entry = registry.get("type", instance_entry.definition.type_id)
    config = generate_metadata(instance_entry.definition, type_entry.definition, registry.namespaces)
    _write_output(render(config), output)


@main.command()
@click.option("--port", envvar="SSNFORGE_PORT", default=8080, show_default=True, type=int)
@click.option(
    "--static-dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    default=None,
    help="Directory of web editor assets served at /.",
)
@click.pass_obj
def serve(cfg: CliConfig, port: int, static_dir: Path | None):
    """Start the HTTP registration and discovery service."""
    import uvicorn

    from .api import create_app

    try:
        registry = cfg.registry()
    except CorruptStore as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_IO)
    app = create_app(registry, static_dir=static_dir)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
