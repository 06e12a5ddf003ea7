"""Command line front end.

Four subcommands: ``homology`` computes a bigraded summary and the
torsion-order invariant for one knot; ``bound`` compares two knots and
prints the implied ribbon-distance lower bounds; ``verify`` runs the
relation-check suites over the bundled knot table; ``movie`` evaluates
a movie script to its induced map.

Exit codes: 0 on success, 1 when a verification or comparison fails,
2 on input errors.  Output is deterministic for a fixed config: table
entries are iterated in sorted order and every report is assembled
before printing.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import json
import os
import sys

import click

from .cobordism import (Move, MoveError, MovieError, apply_move,
                        decoration_chain_map, evaluate_movie, load_movie,
                        parse_movie, ribbon_structure_errors,
                        verify_dot_crossing, verify_ribbon_composite,
                        verify_saddle_split, verify_star_placement,
                        verify_symmetry)
from .complexes import build_complex, compose, identity_map, scale_map
from .diagram import parse_pd, unknot_diagram
from .frobenius import (TheoryError, axiom_report, neck_cutting_report,
                        theory_from_selector)
from .homology import (HomologyData, homology, induced_map,
                       maps_equal_on_homology, torsion_bound)
from .jones import poly_str
from .tables import TABLE_ENV, load_table

ALL_THEORIES = ("bn", "kh-f2", "alpha", "alpha@0,t/f2", "alpha@1,-1/q")
HOMOLOGY_THEORIES = ("bn", "alpha@0,t/f2")
SUITES = ("frobenius", "neckcut", "dot-crossing", "saddle-split",
          "symmetry", "ribbon", "movie-star")


class InputError(click.ClickException):
    exit_code = 2


@dataclass
class RunConfig:
    command: str
    theory: str = "bn"
    pd: str = None
    name: str = None
    input: str = None
    output: str = "table"
    max_crossings: int = 6
    jobs: int = 1
    script: str = None
    compare: str = None
    compose_reverse: bool = False
    distance: int = None
    movie_path: str = None
    knots: tuple = ()
    suite: str = None
    verbose: bool = False


def _resolve_theory(selector):
    try:
        return theory_from_selector(selector)
    except TheoryError as e:
        raise InputError(str(e))


def _load_diagram_arg(text):
    """A knot argument: bundled name, 'unknot', or literal PD text."""
    if text == "unknot":
        return unknot_diagram(), "unknot"
    if "[" in text:
        try:
            return parse_pd(text), None
        except Exception as e:
            raise InputError("bad PD code: %s" % e)
    table = _table()
    if text in table:
        return table[text], text
    raise InputError("unknown knot %r (not a bundled name, not PD text)"
                     % text)


_TABLE_CACHE = {}


def _table():
    path = os.environ.get(TABLE_ENV, "")
    if path not in _TABLE_CACHE:
        try:
            _TABLE_CACHE[path] = load_table(path or None)
        except OSError as e:
            raise InputError("cannot read knot table: %s" % e)
    return _TABLE_CACHE[path]


def _emit(cfg, payload, text):
    if cfg.output == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
    else:
        click.echo(text)


# -- homology ------------------------------------------------------------

def cmd_homology(cfg):
    theory = _resolve_theory(cfg.theory)
    sources = [s for s in (cfg.pd, cfg.name, cfg.input) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --pd, --name, --input")
    if cfg.pd is not None:
        if not cfg.pd.strip():
            raise InputError("empty PD code")
        try:
            diagram = parse_pd(cfg.pd)
        except Exception as e:
            raise InputError("bad PD code: %s" % e)
        label = None
    elif cfg.name:
        diagram, label = _load_diagram_arg(cfg.name)
    else:
        try:
            with open(cfg.input) as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(str(e))
        try:
            diagram = parse_pd(text)
        except Exception as e:
            raise InputError("bad PD code in %s: %s" % (cfg.input, e))
        label = os.path.basename(cfg.input)

    cx = build_complex(diagram, theory)
    try:
        summary = homology(cx)
    except ValueError as e:
        raise InputError(str(e))
    lines = []
    if label:
        lines.append("knot: %s" % label)
    lines.append("theory: %s" % summary.theory)
    lines.append(summary.format_table())
    payload = summary.as_dict()
    payload["knot"] = label
    try:
        tb = torsion_bound(summary, theory)
    except ValueError as e:
        tb = None
        lines.append("torsion bound: n/a (%s)" % e)
        payload["bound"] = None
    if tb is not None:
        note = " (%s)" % tb.note if tb.note else ""
        lines.append("%s = %d%s" % (tb.label, tb.value, note))
        payload["bound"] = {"label": tb.label, "value": tb.value,
                            "note": tb.note}
    _emit(cfg, payload, "\n".join(lines))
    return 0


# -- bound ---------------------------------------------------------------

@dataclass
class BoundReport:
    theory: str
    names: tuple
    label: str
    values: tuple
    distance_hypothesis: int = None

    @property
    def gap(self):
        return abs(self.values[0] - self.values[1])

    @property
    def consistent(self):
        if self.distance_hypothesis is None:
            return True
        return self.gap <= self.distance_hypothesis

    def format_table(self):
        lines = []
        for name, v in zip(self.names, self.values):
            lines.append("%s(%s) = %d" % (self.label, name, v))
            lines.append("  ribbon distance from the unknot >= %d" % v)
        lines.append("|%s(%s) - %s(%s)| = %d"
                     % (self.label, self.names[0], self.label,
                        self.names[1], self.gap))
        lines.append("any ribbon concordance between them needs >= %d "
                     "saddle%s" % (self.gap, "" if self.gap == 1 else "s"))
        if self.distance_hypothesis is not None:
            lines.append("hypothesis d = %d: %s"
                         % (self.distance_hypothesis,
                            "consistent" if self.consistent
                            else "VIOLATED (impossible movie)"))
        return "\n".join(lines)

    def as_dict(self):
        return {
            "theory": self.theory,
            "label": self.label,
            "knots": list(self.names),
            "values": list(self.values),
            "gap": self.gap,
            "distance_hypothesis": self.distance_hypothesis,
            "consistent": self.consistent,
        }


def cmd_bound(cfg):
    theory = _resolve_theory(cfg.theory)
    if len(cfg.knots) != 2:
        raise InputError("bound needs exactly two knot arguments")
    values = []
    names = []
    for k, text in enumerate(cfg.knots):
        diagram, label = _load_diagram_arg(text)
        names.append(label or "knot%d" % (k + 1))
        if len(diagram.components) != 1:
            raise InputError(
                "%s has %d components; the torsion bounds are stated for "
                "knots, refusing" % (names[-1], len(diagram.components)))
        try:
            summary = homology(build_complex(diagram, theory))
            tb = torsion_bound(summary, theory)
        except ValueError as e:
            raise InputError(str(e))
        values.append(tb)
    if values[0].label != values[1].label:
        raise InputError("mismatched invariants %s vs %s"
                         % (values[0].label, values[1].label))
    d = cfg.distance
    if cfg.movie_path:
        try:
            movie = load_movie(cfg.movie_path)
        except (OSError, MovieError) as e:
            raise InputError(str(e))
        d = movie.saddle_count()
    report = BoundReport(theory.name, tuple(names), values[0].label,
                         tuple(v.value for v in values), d)
    _emit(cfg, report.as_dict(), report.format_table())
    return 0 if report.consistent else 1


# -- verify --------------------------------------------------------------

def _knots_upto(max_crossings):
    table = _table()
    out = []
    for name in sorted(table, key=lambda s: (len(s), s)):
        if len(table[name].crossings) <= max_crossings:
            out.append(name)
    return out


def _bundled_movie_dir():
    return os.path.join(os.path.dirname(__file__), "data", "movies")


def bundled_movie_paths():
    d = _bundled_movie_dir()
    if not os.path.isdir(d):
        return []
    return [os.path.join(d, f) for f in sorted(os.listdir(d))
            if f.endswith(".movie")]


# Palindromic decorated movies for the symmetry suite: each entry is
# (name, script, needs_roots).  The underlying frame lists are
# palindromes; the decoration sits at the middle step in at least two
# placements; digit decorations only run under theories with chosen
# roots.
SYMMETRY_MOVIES = (
    ("tube-dot-kept", "start unknot\nsaddle 1 1\ndot 1\nsaddle 1 2\n",
     False),
    ("tube-dot-loop", "start unknot\nsaddle 1 1\ndot 2\nsaddle 1 2\n",
     False),
    ("tube-digits", "start unknot\nsaddle 1 1\ndot1 1\ndot2 2\nsaddle 1 2\n",
     True),
    ("kink-dot-strand", "start unknot\nr1+ 1 +\ndot 1\nr1- 0\n", False),
    ("kink-dot-loop", "start unknot\nr1+ 1 +\ndot 2\nr1- 0\n", False),
    ("kink-digit1", "start unknot\nr1+ 1 -\ndot1 2\nr1- 0\n", True),
    ("slide-dot-over",
     "start PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\nr2+ 1 4\ndot 7\nr2- 3 4\n",
     False),
    ("slide-dot-under",
     "start PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\nr2+ 1 4\ndot 8\nr2- 3 4\n",
     False),
)


def _verify_instances(cfg):
    """The (label, spec) list for a suite; spec is a picklable tuple."""
    suite = cfg.suite
    theories = [cfg.theory] if cfg.theory else None
    out = []
    if suite == "frobenius":
        for sel in theories or ALL_THEORIES:
            out.append(("frobenius %s" % sel, ("axioms", sel)))
    elif suite == "neckcut":
        for sel in theories or ALL_THEORIES:
            out.append(("neckcut %s" % sel, ("neckcut", sel)))
    elif suite == "dot-crossing":
        table = _table()
        for sel in theories or HOMOLOGY_THEORIES:
            for name in _knots_upto(cfg.max_crossings):
                for ci in range(len(table[name].crossings)):
                    out.append(("dot-crossing %s c%d %s" % (name, ci, sel),
                                ("dot", name, ci, sel)))
    elif suite == "saddle-split":
        table = _table()
        for sel in theories or HOMOLOGY_THEORIES:
            out.append(("saddle-split unknot e1 %s" % sel,
                        ("split", "unknot", 1, sel)))
            for name in _knots_upto(cfg.max_crossings):
                edges = sorted(table[name].edges)
                for e in edges[:2]:
                    out.append(("saddle-split %s e%d %s" % (name, e, sel),
                                ("split", name, e, sel)))
    elif suite == "symmetry":
        for sel in theories or HOMOLOGY_THEORIES:
            has_roots = sel.startswith("alpha")
            for name, script, needs_roots in SYMMETRY_MOVIES:
                if needs_roots and not has_roots:
                    continue
                out.append(("symmetry %s %s" % (name, sel),
                            ("symmetry", script, sel)))
    elif suite == "ribbon":
        paths = bundled_movie_paths()
        if not paths:
            raise InputError("no bundled movies found")
        for sel in theories or HOMOLOGY_THEORIES:
            for p in paths:
                out.append(("ribbon %s %s" % (os.path.basename(p), sel),
                            ("ribbon", p, sel)))
    elif suite == "movie-star":
        table = _table()
        for sel in theories or HOMOLOGY_THEORIES:
            for name in _knots_upto(cfg.max_crossings):
                edges = sorted(table[name].edges)
                if len(edges) < 2:
                    continue
                pairs = [(edges[0], edges[1]), (edges[0], edges[-1])]
                for e1, e2 in sorted(set(pairs)):
                    out.append(("movie-star %s e%d e%d %s"
                                % (name, e1, e2, sel),
                                ("star", name, e1, e2, sel)))
    else:
        raise InputError("unknown suite %r (choose from %s)"
                         % (suite, ", ".join(SUITES)))
    return out


def _run_instance(spec):
    """Worker for one verification instance; returns (ok, detail)."""
    kind = spec[0]
    if kind == "axioms":
        rep = axiom_report(theory_from_selector(spec[1]))
        bad = [name for name, ok, _ in rep if not ok]
        return (not bad, "all %d axioms hold" % len(rep) if not bad
                else "failing: " + ", ".join(bad))
    if kind == "neckcut":
        rep = neck_cutting_report(theory_from_selector(spec[1]))
        bad = [name for name, ok, _ in rep if not ok]
        forms = ", ".join(name for name, _, _ in rep)
        return (not bad, forms if not bad else "failing: " + ", ".join(bad))
    if kind == "dot":
        _, name, ci, sel = spec
        theory = theory_from_selector(sel)
        diagram = _table()[name]
        ok = verify_dot_crossing(diagram, ci, theory)
        return ok, ""
    if kind == "split":
        _, name, e, sel = spec
        theory = theory_from_selector(sel)
        diagram = unknot_diagram() if name == "unknot" else _table()[name]
        ok = verify_saddle_split(diagram, Move("saddle", (e, e)), theory)
        return ok, ""
    if kind == "symmetry":
        _, script, sel = spec
        theory = theory_from_selector(sel)
        movie = parse_movie(script)
        ok = verify_symmetry(movie, theory)
        return ok, ""
    if kind == "ribbon":
        _, path, sel = spec
        theory = theory_from_selector(sel)
        movie = load_movie(path)
        ok = verify_ribbon_composite(movie, movie.saddle_count(), theory)
        return ok, "%d saddle(s)" % movie.saddle_count()
    if kind == "star":
        _, name, e1, e2, sel = spec
        theory = theory_from_selector(sel)
        ok = verify_star_placement(_table()[name], e1, e2, theory)
        return ok, ""
    raise ValueError("bad instance %r" % (spec,))


def _run_instance_guarded(spec):
    try:
        return _run_instance(spec)
    except Exception as e:
        return False, "error: %s" % e


def cmd_verify(cfg):
    instances = _verify_instances(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_instance_guarded,
                                    [spec for _, spec in instances]))
    else:
        results = [_run_instance_guarded(spec) for _, spec in instances]
    failures = 0
    for (label, _), (ok, detail) in zip(instances, results):
        status = "PASS" if ok else "FAIL"
        failures += not ok
        tail = ("  [%s]" % detail) if detail and (cfg.verbose or not ok) \
            else ""
        click.echo("%s %s%s" % (status, label, tail))
    click.echo("%d/%d instances passed" % (len(instances) - failures,
                                           len(instances)))
    return 1 if failures else 0


# -- movie ---------------------------------------------------------------

def _parse_compare(token):
    """``id`` or ``h^d``/``t^d`` (coefficient scalar) or ``x^d`` (star)."""
    token = token.strip().lower()
    if token == "id":
        return ("scalar", 0)
    if "^" in token:
        letter, _, exp = token.partition("^")
        try:
            k = int(exp)
        except ValueError:
            raise InputError("bad exponent in compare spec %r" % token)
        if k < 0:
            raise InputError("compare exponent must be >= 0")
        if letter in ("h", "t"):
            return ("scalar", k)
        if letter == "x":
            return ("star", k)
    raise InputError("compare spec must be id, h^d, t^d or x^d")


def cmd_movie(cfg):
    theory = _resolve_theory(cfg.theory)
    try:
        movie = load_movie(cfg.script)
    except OSError as e:
        raise InputError(str(e))
    except MovieError as e:
        raise InputError(str(e))

    lines = ["movie %s: %d moves" % (movie.name, len(movie.moves))]
    frames_json = []
    for k, frame in enumerate(movie.frames):
        what = "start" if k == 0 else str(movie.moves[k - 1])
        desc = "%d crossings, %d components" % (len(frame.crossings),
                                                len(frame.components))
        lines.append("frame %d (%s): %s" % (k, what, desc))
        frames_json.append({"frame": k, "after": what,
                            "crossings": len(frame.crossings),
                            "components": len(frame.components)})

    try:
        cxs = movie.complexes(theory)
        f = evaluate_movie(movie, theory, cxs)
        if cfg.compose_reverse:
            g = evaluate_movie(movie.reversed(), theory)
            f = compose(g, f)
            tgt_cx = cxs[0]
        else:
            tgt_cx = cxs[-1]
        ha = HomologyData(cxs[0])
        hb = ha if tgt_cx is cxs[0] or cfg.compose_reverse \
            else HomologyData(tgt_cx)
    except (MoveError, ValueError) as e:
        raise InputError(str(e))

    ind = induced_map(f, ha, hb)
    ring = hb.work.ring
    lines.append("induced map on homology (columns in canonical "
                 "coordinates):")
    ind_json = {}
    for r in sorted(ind):
        cols = ind[r]
        txt = "; ".join("[" + ", ".join(ring.fmt(v) for v in col) + "]"
                        for col in cols)
        lines.append("  r=%+d: %s" % (r, txt))
        ind_json[str(r)] = [[ring.fmt(v) for v in col] for col in cols]

    verdict = None
    if cfg.compare is not None:
        mode, k = _parse_compare(cfg.compare)
        ident = identity_map(ha.original)
        if mode == "scalar":
            c = theory.ring.one
            if k and not hasattr(theory.ring, "gen"):
                raise InputError("theory %s has no coefficient variable "
                                 "to raise to a power" % cfg.theory)
            for _ in range(k):
                c = theory.ring.mul(c, theory.ring.gen())
            lhs = scale_map(c, f)
            rhs = scale_map(c, ident)
        else:
            e0 = movie.frames[0].edges[0]
            rhs = ident
            for _ in range(k):
                rhs = compose(decoration_chain_map(theory, ha.original,
                                                   "star", e0), rhs)
            lhs = f
        if not cfg.compose_reverse and movie.frames[-1] != movie.frames[0]:
            raise InputError("--compare needs an endomorphism; use "
                             "--compose-reverse or a closed movie")
        ok = maps_equal_on_homology(lhs, rhs, ha, ha,
                                    up_to_sign=theory.ring.char != 2)
        verdict = ok
        lines.append("compare %s: %s" % (cfg.compare,
                                         "equal" if ok else "DIFFERENT"))

    payload = {"movie": movie.name, "theory": cfg.theory,
               "frames": frames_json, "induced": ind_json,
               "compare": cfg.compare, "equal": verdict}
    _emit(cfg, payload, "\n".join(lines))
    return 1 if verdict is False else 0


# -- click wiring --------------------------------------------------------

@click.group()
def main():
    """Bar-Natan and alpha homology of knots, with movie verification."""


@main.command("homology")
@click.option("--theory", default="bn", show_default=True)
@click.option("--pd", default=None, help="PD code text")
@click.option("--name", default=None, help="bundled knot name, e.g. 6_1")
@click.option("--input", "input_", default=None,
              type=click.Path(), help="file containing a PD code")
@click.option("--output", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
def homology_cmd(theory, pd, name, input_, output):
    """Homology summary and torsion bound of one knot."""
    cfg = RunConfig("homology", theory=theory, pd=pd, name=name,
                    input=input_, output=output)
    sys.exit(cmd_homology(cfg))


@main.command("bound")
@click.argument("knots", nargs=2)
@click.option("--theory", default="bn", show_default=True)
@click.option("-d", "--distance", type=int, default=None,
              help="ribbon distance hypothesis to check against")
@click.option("--movie", "movie_path", type=click.Path(), default=None,
              help="movie whose saddle count plays the distance role")
@click.option("--output", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
def bound_cmd(knots, theory, distance, movie_path, output):
    """Torsion values of two knots and the implied distance bounds.

    KNOTS are bundled names, 'unknot', or literal PD codes.
    """
    cfg = RunConfig("bound", theory=theory, knots=tuple(knots),
                    distance=distance, movie_path=movie_path, output=output)
    sys.exit(cmd_bound(cfg))


@main.command("verify")
@click.argument("suite")
@click.option("--theory", default=None,
              help="restrict to one theory selector")
@click.option("--max-crossings", type=int, default=6, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("-v", "--verbose", is_flag=True)
def verify_cmd(suite, theory, max_crossings, jobs, verbose):
    """Run one verification suite; SUITE is one of:

    frobenius, neckcut, dot-crossing, saddle-split, symmetry, ribbon,
    movie-star.
    """
    if suite not in SUITES:
        raise InputError("unknown suite %r (choose from %s)"
                         % (suite, ", ".join(SUITES)))
    cfg = RunConfig("verify", theory=theory, max_crossings=max_crossings,
                    jobs=jobs, verbose=verbose)
    cfg.suite = suite
    sys.exit(cmd_verify(cfg))


@main.command("movie")
@click.option("--script", required=True, type=click.Path(),
              help="movie script path")
@click.option("--theory", default="bn", show_default=True)
@click.option("--compose-reverse", is_flag=True,
              help="follow the movie with its reverse")
@click.option("--compare", default=None,
              help="compare against id, h^d / t^d, or x^d")
@click.option("--output", type=click.Choice(["table", "json"]),
              default="table", show_default=True)
def movie_cmd(script, theory, compose_reverse, compare, output):
    """Evaluate a movie script and report the induced map."""
    cfg = RunConfig("movie", theory=theory, script=script,
                    compose_reverse=compose_reverse, compare=compare,
                    output=output)
    sys.exit(cmd_movie(cfg))


if __name__ == "__main__":
    main()
