"""Command-line interface. Thin delegation to the engine; every command's
stdout is deterministic given its flags, and --format json emits the same
documents the HTTP API serves."""

from __future__ import annotations

import functools
import json
import sys

import click

from .api import schemas as S
from .errors import IcarusError, UnknownCellError
from .prompts import enumerate_prompts, parse_prompt, sample as draw_sample
from .corpus import bucket_counts, query
from .rules import load_rules
from .session import coverage as compute_coverage, suggest_next
from .worksheet import build_worksheet, render_worksheet
from .workspace import Workspace


def _json(doc) -> str:
    if hasattr(doc, "model_dump"):
        doc = doc.model_dump(mode="json")
    return json.dumps(doc, indent=2, ensure_ascii=False)


def domain_errors(fn):
    """Map engine errors onto the CLI exit convention:
    usage problems (unknown cells/flags) exit 2, domain errors exit 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except UnknownCellError as e:
            raise click.UsageError(str(e)) from None
        except IcarusError as e:
            raise click.ClickException(str(e)) from None

    return wrapper


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    show_default=True, help="Output format.",
)


@click.group()
@click.option(
    "--data", "data_dir", type=click.Path(file_okay=False), default=None,
    envvar="ICARUS_DATA", help="Data directory (defaults to bundled data).",
)
@click.pass_context
def cli(ctx, data_dir):
    """Scenario-prompt engine for the ICARUS space-cyberattack matrix."""
    ctx.obj = {"data_dir": data_dir}


def _workspace(ctx) -> Workspace:
    obj = ctx.obj or {}
    if "workspace" not in obj:
        obj["workspace"] = Workspace(obj.get("data_dir"))
    return obj["workspace"]


@cli.command()
@click.option("--kmin", type=int, default=2, show_default=True)
@click.option("--kmax", type=int, default=5, show_default=True)
@format_option
@click.pass_context
@domain_errors
def count(ctx, kmin, kmax, fmt):
    """Print the total number of prompts in the space."""
    space = _workspace(ctx).space(kmin, kmax)
    if fmt == "json":
        click.echo(_json(S.CountDoc(count=space.count)))
    else:
        click.echo(str(space.count))


@cli.group()
def matrix():
    """Inspect the active matrix."""


@matrix.command("show")
@click.option("--category", "letter", default=None, help="Limit to one category letter.")
@format_option
@click.pass_context
@domain_errors
def matrix_show(ctx, letter, fmt):
    """Print categories and cells."""
    m = _workspace(ctx).matrix
    cats = m.categories if letter is None else (m.category(letter),)
    if fmt == "json":
        doc = S.MatrixDoc(**m.to_doc())
        if letter is not None:
            doc = S.MatrixDoc(
                source=m.source,
                categories=[c for c in doc.categories if c.letter == letter],
            )
        click.echo(_json(doc))
        return
    for cat in cats:
        click.echo(f"{cat.letter}: {cat.name}")
        for cell in cat.cells:
            click.echo(f"  {cell.token:<4} {cell.label}")


@cli.command()
@click.option("-n", "n", type=int, required=True, help="Number of prompts to draw.")
@click.option("--seed", type=int, required=True, help="64-bit unsigned seed.")
@click.option("--lock", "locks", multiple=True, metavar="CELL",
              help="Cell that must appear in every prompt (repeatable).")
@click.option("--rules", "rules_path", type=click.Path(dir_okay=False), default=None,
              help="Exclusion-rule file filtering the draw.")
@format_option
@click.pass_context
@domain_errors
def sample(ctx, n, seed, locks, rules_path, fmt):
    """Draw n distinct prompts, uniformly and deterministically."""
    ws = _workspace(ctx)
    space = ws.default_space
    rules = load_rules(rules_path, ws.matrix) if rules_path else None
    prompts = draw_sample(space, seed, n, locks=locks, rules=rules)
    if fmt == "json":
        doc = S.SampleDoc(
            seed=seed, n=n,
            locks=[ws.matrix.cell(t).token for t in locks],
            rules_id=None,
            prompts=[S.PromptDoc.from_prompt(space, p) for p in prompts],
        )
        click.echo(_json(doc))
    else:
        for p in prompts:
            click.echo(p.canonical())


@cli.command()
@click.option("--from", "start", type=int, required=True, help="First rank (inclusive).")
@click.option("--to", "stop", type=int, required=True, help="Last rank (exclusive).")
@click.option("--admissible-only", is_flag=True, default=False,
              help="Skip prompts denied by the rule file.")
@click.option("--rules", "rules_path", type=click.Path(dir_okay=False), default=None)
@format_option
@click.pass_context
@domain_errors
def enumerate(ctx, start, stop, admissible_only, rules_path, fmt):
    """Print prompts at ranks [--from, --to) in canonical order."""
    ws = _workspace(ctx)
    space = ws.default_space
    rules = None
    if rules_path:
        rules = load_rules(rules_path, ws.matrix)
    elif admissible_only:
        rules = ws.default_rules
    stream = enumerate_prompts(space, start, stop)
    if rules is not None:
        stream = (p for p in stream if rules.admits(p))
    if fmt == "json":
        docs = [S.PromptDoc.from_prompt(space, p) for p in stream]
        click.echo(_json({"prompts": [d.model_dump(mode="json") for d in docs]}))
    else:
        for p in stream:
            click.echo(p.canonical())


@cli.command()
@click.argument("prompt_text", metavar="PROMPT")
@click.pass_context
@domain_errors
def rank(ctx, prompt_text):
    """Print the canonical rank of PROMPT (e.g. \"A5+C13\")."""
    ws = _workspace(ctx)
    prompt = parse_prompt(prompt_text, ws.matrix)
    click.echo(str(ws.default_space.rank(prompt)))


@cli.command()
@click.argument("index", type=int)
@click.pass_context
@domain_errors
def unrank(ctx, index):
    """Print the prompt at rank INDEX."""
    click.echo(_workspace(ctx).default_space.unrank(index).canonical())


@cli.group()
def corpus():
    """Browse the bundled scenario corpus."""


@corpus.command("list")
@click.option("--era", default=None, type=click.Choice(["near", "medium", "long"]))
@click.option("--locale", default=None,
              type=click.Choice(["ground_to_space", "earthbound", "cislunar_beyond"]))
@click.option("--q", "text", default=None, help="Case-insensitive substring filter.")
@click.option("--cell", default=None, help="Match scenarios suggesting this cell.")
@format_option
@click.pass_context
@domain_errors
def corpus_list(ctx, era, locale, text, cell, fmt):
    """List scenarios, optionally filtered."""
    ws = _workspace(ctx)
    token = ws.matrix.cell(cell).token if cell else None
    found = query(ws.corpus, era=era, locale=locale, text=text, cell=token)
    if fmt == "json":
        doc = S.ScenarioListDoc(scenarios=[S.ScenarioDoc.from_scenario(s) for s in found])
        click.echo(_json(doc))
        return
    for s in found:
        click.echo(f"{s.id:>2}  {s.heading}  [{s.era.value}/{s.locale.value}]")


@corpus.command("show")
@click.argument("scenario_id", type=int, metavar="ID")
@format_option
@click.pass_context
@domain_errors
def corpus_show(ctx, scenario_id, fmt):
    """Print one scenario in full."""
    ws = _workspace(ctx)
    s = ws.scenario(scenario_id)
    if fmt == "json":
        click.echo(_json(S.ScenarioDoc.from_scenario(s)))
        return
    click.echo(f"{s.id}. {s.heading}")
    click.echo(f"era: {s.era.value}  locale: {s.locale.value}")
    if s.suggested_cells:
        click.echo("suggested cells: " + "+".join(c.token for c in s.suggested_cells))
    click.echo("")
    click.echo(s.description)


@corpus.command("buckets")
@format_option
@click.pass_context
@domain_errors
def corpus_buckets(ctx, fmt):
    """Print the era x locale scenario counts."""
    table = bucket_counts(_workspace(ctx).corpus)
    if fmt == "json":
        click.echo(_json(table))
        return
    locales = list(next(iter(table.values())).keys())
    click.echo("era/locale  " + "  ".join(f"{l:>16}" for l in locales))
    for era, row in table.items():
        click.echo(f"{era:<10}  " + "  ".join(f"{row[l]:>16}" for l in locales))


@cli.command()
@click.argument("prompt_text", metavar="PROMPT")
@click.option("--scenario", "scenario_id", type=int, default=None,
              help="Attach a corpus scenario by id.")
@click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="md",
              show_default=True)
@click.pass_context
@domain_errors
def worksheet(ctx, prompt_text, scenario_id, fmt):
    """Render a scenario-development worksheet for PROMPT."""
    ws = _workspace(ctx)
    prompt = parse_prompt(prompt_text, ws.matrix)
    ws.default_space.rank(prompt)  # validates cardinality
    scenario = ws.scenario(scenario_id) if scenario_id is not None else None
    sheet = build_worksheet(prompt, ws.battery, scenario=scenario)
    if fmt == "json":
        click.echo(_json(S.WorksheetDoc.from_worksheet(sheet)))
    else:
        click.echo(render_worksheet(sheet, "markdown"), nl=False)


@cli.group()
def rules():
    """Work with exclusion-rule files."""


@rules.command("check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False), metavar="FILE")
@format_option
@click.pass_context
@domain_errors
def rules_check(ctx, path, fmt):
    """Parse FILE against the active matrix; exit 1 on any error."""
    ws = _workspace(ctx)
    rs = load_rules(path, ws.matrix)
    if fmt == "json":
        doc = S.RulesCheckDoc(
            ok=True, count=len(rs), rules=[S.RuleDoc.from_rule(r) for r in rs.rules]
        )
        click.echo(_json(doc))
        return
    click.echo(f"ok: {len(rs)} rules")
    for r in rs.rules:
        click.echo(f"  {r.id} ({r.kind}): {r.text()}")


@cli.group()
def session():
    """Create and inspect facilitation sessions."""


@session.command("new")
@click.option("--seed", type=int, default=0, show_default=True)
@format_option
@click.pass_context
@domain_errors
def session_new(ctx, seed, fmt):
    """Create a session; prints its id."""
    s = _workspace(ctx).sessions.create(seed)
    if fmt == "json":
        click.echo(_json(S.SessionMetaDoc(id=s.id, seed=s.seed, created=s.created)))
    else:
        click.echo(s.id)


@session.command("events")
@click.argument("session_id", metavar="ID")
@format_option
@click.pass_context
@domain_errors
def session_events(ctx, session_id, fmt):
    """Print a session's journal, one event per line."""
    s = _workspace(ctx).sessions.get(session_id)
    if fmt == "json":
        click.echo(_json([e.to_doc() for e in s.events]))
        return
    for e in s.events:
        click.echo(json.dumps(e.to_doc(), ensure_ascii=False))


@session.command("coverage")
@click.argument("session_id", metavar="ID")
@format_option
@click.pass_context
@domain_errors
def session_coverage(ctx, session_id, fmt):
    """Print coverage statistics for a session."""
    ws = _workspace(ctx)
    s = ws.sessions.get(session_id)
    space = ws.default_space
    report = compute_coverage(
        s.state, space, ws.default_rules,
        admissible_count=ws.admissible_count(space, "default"),
    )
    if fmt == "json":
        click.echo(_json(S.CoverageDoc(**report.to_doc())))
        return
    click.echo(f"explored: {report.explored}")
    click.echo(f"pairs: {report.pairs_covered} / {report.pairs_total}"
               f" ({report.pair_coverage:.4%})")
    click.echo(f"admissible space: {report.admissible}")
    for token, uses in sorted(report.cell_usage.items()):
        click.echo(f"  {token:<4} {uses}")


@session.command("suggest")
@click.argument("session_id", metavar="ID")
@click.option("--seed", type=int, default=0, show_default=True)
@format_option
@click.pass_context
@domain_errors
def session_suggest(ctx, session_id, seed, fmt):
    """Suggest an admissible prompt maximizing new pair coverage."""
    ws = _workspace(ctx)
    s = ws.sessions.get(session_id)
    space = ws.default_space
    sug = suggest_next(s.state, space, ws.default_rules, seed)
    if fmt == "json":
        doc = S.SuggestionDoc(
            prompt=S.PromptDoc.from_prompt(space, sug.prompt),
            new_pairs=sug.new_pairs, complete=sug.complete,
        )
        click.echo(_json(doc))
    else:
        flag = "  (coverage complete)" if sug.complete else ""
        click.echo(f"{sug.prompt.canonical()}  +{sug.new_pairs} pairs{flag}")


@cli.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True,
              help="Bind address; use 0.0.0.0 to open LAN access.")
@click.option("--data", "data_dir", type=click.Path(file_okay=False), default=None,
              help="Data directory for this server.")
@click.pass_context
@domain_errors
def serve(ctx, port, host, data_dir):
    """Run the local HTTP API."""
    import uvicorn

    from .api import create_app

    obj = ctx.obj or {}
    workspace = Workspace(data_dir or obj.get("data_dir"))
    uvicorn.run(create_app(workspace), host=host, port=port)


def main(argv=None):
    try:
        return cli.main(args=argv, standalone_mode=True)
    except IcarusError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
