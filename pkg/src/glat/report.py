"""Deterministic text rendering of computation results.

Every renderer returns a :class:`Report`: an ordered list of sections, each
an ordered list of ``(key, value)`` pairs plus optional table rows.  Human
output prints sections in order; ``kv`` output prints ``section.key=value``
lines sorted by key.  Nothing time- or machine-dependent goes into a report.
"""

from dataclasses import dataclass, field

from .cohomology import h1_profile, h1_subgroup
from .lattices import dual


@dataclass
class Section:
    name: str
    items: list = field(default_factory=list)
    header: tuple = None
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, key, value):
        self.items.append((key, value))
        return self


@dataclass
class Report:
    sections: list = field(default_factory=list)

    def section(self, name):
        s = Section(name)
        self.sections.append(s)
        return s

    def render(self, fmt="human"):
        return self.kv() if fmt == "kv" else self.human()

    def human(self):
        out = []
        for s in self.sections:
            out.append(f"[{s.name}]")
            for k, v in s.items:
                out.append(f"{k} = {v}")
            if s.header:
                table = [list(s.header)] + [[str(c) for c in r] for r in s.rows]
                widths = [max(len(r[i]) for r in table) for i in range(len(s.header))]
                for r in table:
                    out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            for n in s.notes:
                out.append(f"note: {n}")
            out.append("")
        return "\n".join(out)

    def kv(self):
        pairs = {}
        for s in self.sections:
            for k, v in s.items:
                pairs[f"{s.name}.{k.replace(' ', '_')}"] = v
            if s.header:
                cols = [h.replace(" ", "_") for h in s.header]
                for r in s.rows:
                    for c, v in zip(cols[1:], r[1:]):
                        pairs[f"{s.name}.{r[0]}.{c}"] = v
            for i, n in enumerate(s.notes):
                pairs[f"{s.name}.note{i}"] = n
        return "\n".join(f"{k}={pairs[k]}" for k in sorted(pairs)) + "\n"


def subgroup_label(i, count):
    return f"U{i:0{len(str(count - 1))}d}"


def _gens(u):
    return ",".join(u.generator_words())


def lattice_section(report, lat):
    s = report.section("lattice")
    s.add("name", lat.name)
    s.add("rank", lat.rank)
    s.add("group order", lat.group.order)
    s.add("group generators", ",".join(lat.group.generator_names))
    return s


def show_report(lat):
    r = Report()
    lattice_section(r, lat)
    s = r.section("basis")
    s.add("labels", ",".join(lat.labels))
    s = r.section("action")
    for name, m in zip(lat.group.generator_names, lat.generator_images()):
        s.add(name, ";".join(" ".join(str(v) for v in row) for row in m.rows))
    s = r.section("subgroups")
    subs = lat.group.subgroups()
    s.header = ("label", "order", "generators", "fixed rank")
    for i, u in enumerate(subs):
        s.rows.append((subgroup_label(i, len(subs)), u.order, _gens(u), lat.fixed_rank(u)))
    return r


def cohomology_report(lat, which=None, use_dual=False):
    """H^1 table; ``which`` is a subgroup index, or None for every subgroup."""
    target = dual(lat) if use_dual else lat
    r = Report()
    lattice_section(r, lat).add("module", "dual" if use_dual else "lattice")
    subs = lat.group.subgroups()
    s = r.section("cohomology")
    s.header = ("label", "order", "generators", "H1")
    prof = h1_profile(target) if which is None else None
    indices = range(len(subs)) if which is None else [which]
    for i in indices:
        u = subs[i]
        val = prof[u] if prof is not None else h1_subgroup(target, u)
        s.rows.append((subgroup_label(i, len(subs)), u.order, _gens(u), str(val)))
    whole = len(subs) - 1
    if whole in indices:
        val = prof[subs[whole]] if prof is not None else h1_subgroup(target, subs[whole])
        s.add("H1(W)", str(val))
        s.notes.append(f"H1(W) = {val}")
    return r


def resolution_report(res):
    r = Report()
    lattice_section(r, res.m)
    s = r.section("resolution")
    s.add("rank M", res.m.rank)
    s.add("rank S", res.s.rank)
    s.add("rank F", res.f.rank)
    s.add("exact", "verified")
    subs = res.m.group.subgroups()
    pf, pfd = h1_profile(res.f), h1_profile(dual(res.f))
    s = r.section("profile")
    s.header = ("label", "order", "generators", "H1(F)", "H1(F°)")
    for i, u in enumerate(subs):
        s.rows.append((subgroup_label(i, len(subs)), u.order, _gens(u), str(pf[u]), str(pfd[u])))
    s = r.section("summary")
    s.add("F flasque", str(pfd.is_trivial()).lower())
    s.add("F coflasque", str(pf.is_trivial()).lower())
    return r


def check_report(lat, prop, ok, witness=None, value=None):
    r = Report()
    lattice_section(r, lat)
    s = r.section("check")
    s.add("property", prop)
    s.add("result", str(ok).lower())
    if witness is not None:
        subs = lat.group.subgroups()
        s.add("witness", f"{subgroup_label(subs.index(witness), len(subs))} <{_gens(witness)}>")
        if value is not None:
            s.add("witness H1", str(value))
    return r


NOT_A_PROOF = ("trivial H1 tables on N and its dual are necessary for stable permutation, not "
               "sufficient; a negative answer, if true, must come from an argument outside this "
               "computation")


def search_section(report, rec, max_trials=None):
    s = report.section("search")
    s.add("rank bound", rec.rank_bound)
    s.add("coeff bound", rec.coeff_bound)
    if max_trials is not None:
        s.add("max trials", max_trials)
    s.add("outcome", rec.status)
    s.add("detail", rec.detail)
    if rec.status == "proven":
        s.add("left padding", "+".join(rec.left_padding) or "0")
        s.add("right padding", "+".join(rec.right_padding) or "0")
    return s


def obstruction_report(rep, max_trials=None, rank_bound=None, coeff_bound=None):
    lat = rep.lattice
    r = Report()
    lattice_section(r, lat)
    subs = lat.group.subgroups()
    s = r.section("profile")
    s.header = ("label", "order", "generators", "H1(N)", "H1(N°)")
    for i, u in enumerate(subs):
        s.rows.append((subgroup_label(i, len(subs)), u.order, _gens(u),
                       str(rep.profile_n[u]), str(rep.profile_dual[u])))
    s = r.section("verdict")
    s.add("verdict", rep.verdict)
    if rep.witness is not None:
        side, u, val = rep.witness
        s.add("witness", f"{subgroup_label(subs.index(u), len(subs))} <{_gens(u)}>")
        s.add("witness module", side)
        s.add("obstruction", str(val))
        s.notes.append("a nonzero H1 on some subgroup, for N or its dual, rules out N + P = Q "
                       "with P, Q permutation lattices")
    else:
        s.notes.append(NOT_A_PROOF)
    if rep.search is not None:
        search_section(r, rep.search, max_trials)
    else:
        s = r.section("search")
        s.add("rank bound", rank_bound)
        s.add("coeff bound", coeff_bound)
        if max_trials is not None:
            s.add("max trials", max_trials)
        s.add("outcome", "skipped")
        s.add("detail", "the H1 obstruction already decides the question")
    return r


def similarity_report(a, b, res, max_trials=None, rank_bound=None, coeff_bound=None):
    r = Report()
    s = r.section("lattices")
    s.add("a", f"{a.name} (rank {a.rank})")
    s.add("b", f"{b.name} (rank {b.rank})")
    s.add("group order", a.group.order)
    s = r.section("similarity")
    s.add("verdict", {"similar": "Similar", "not_similar": "NotSimilar", "unknown": "Unknown"}[res.status])
    subs = a.group.subgroups()
    if res.differences:
        s.header = ("label", "module", "order", "generators", "H1(a)", "H1(b)", "|H1(a)|", "|H1(b)|")
        for side, u, va, vb in res.differences:
            i = subs.index(u)
            s.rows.append((f"{subgroup_label(i, len(subs))}.{'dual' if side != 'N' else 'lattice'}",
                           side, u.order, _gens(u), str(va), str(vb), va.order, vb.order))
    if res.search is not None:
        search_section(r, res.search, max_trials)
    else:
        s = r.section("search")
        s.add("rank bound", rank_bound)
        s.add("coeff bound", coeff_bound)
        if max_trials is not None:
            s.add("max trials", max_trials)
        s.add("outcome", "skipped")
        s.add("detail", "differing H1 tables already decide the question")
    return r


def iso_report(a, b, res, coeff_bound=None, max_trials=None):
    r = Report()
    s = r.section("conjugacy")
    s.add("a", a.name)
    s.add("b", b.name)
    s.add("coeff bound", coeff_bound)
    s.add("max trials", max_trials)
    s.add("outcome", res.status)
    if res.reason:
        s.add("detail", res.reason)
    if res.witness is not None:
        s.add("witness", ";".join(" ".join(str(v) for v in row) for row in res.witness.rows))
    return r
