"""Brute-force ground truth at tiny scale.

Nakayama detection and indecomposable enumeration, Krull-Schmidt splitting
against a known indecomposable list, iterated-extension membership search,
and witness verification for extension dimension and weak resolution
dimension.  Everything here only ever PROVES upper bounds; a NotFound from
the search is inconclusive, never a refutation.
"""

from __future__ import annotations

import itertools
import random

from bocal.linalg import Mat, span_basis
from bocal.algebra import AlgebraData
from bocal.modules import (
    ModuleRep,
    ModuleHom,
    ModuleError,
    projective_module,
    simple_module,
    zero_module,
    direct_sum,
    submodule,
    quotient_module,
    kernel_module,
    hom_space,
    split_summand,
    in_add,
    find_isomorphism,
    fingerprint,
    radical_submodule_cols,
    radical_filtration,
    loewy_length,
)


class OracleError(Exception):
    pass


class NotQuiverPresented(OracleError):
    pass


def is_nakayama(a: AlgebraData):
    """(bool, reason) from quiver degree counts; needs a quiver presentation."""
    if a.quiver is None:
        raise NotQuiverPresented(
            f"{a.label or 'algebra'} has no quiver presentation; cannot decide Nakayama shape"
        )
    for v in a.quiver.vertices:
        if a.quiver.out_degree(v) > 1:
            return False, f"vertex {v} has {a.quiver.out_degree(v)} outgoing arrows"
        if a.quiver.in_degree(v) > 1:
            return False, f"vertex {v} has {a.quiver.in_degree(v)} incoming arrows"
    return True, "every vertex has in/out degree <= 1"


def _truncated_projective(a: AlgebraData, idem_index: int, keep: int) -> ModuleRep:
    """P(i)/rad^keep P(i), using the path-length grading of the projective."""
    coords = [k for k in range(a.dim) if a.col_idem[k] == idem_index]
    kept = [k for k in coords if a.path_len[k] < keep]
    pos = {k: i for i, k in enumerate(kept)}
    f = a.field
    action = []
    for b in range(a.dim):
        m = Mat.zeros(f, len(kept), len(kept))
        for j, k in enumerate(kept):
            for k2, c in a.product_basis(b, k).items():
                if k2 in pos:
                    m.data[pos[k2]][j] = c
        action.append(m)
    label = f"P({a.labels[idem_index]})/rad^{keep}"
    return ModuleRep(a, [a.row_idem[k] for k in kept], action, label=label)


class IndecSet:
    """One module per isomorphism class, with provenance."""

    def __init__(self, algebra, modules, names, provenance):
        self.algebra = algebra
        self.modules = list(modules)
        self.names = list(names)
        self.provenance = provenance

    def __len__(self):
        return len(self.modules)

    def pairwise_distinct_fingerprints(self) -> bool:
        seen = {}
        for name, m in zip(self.names, self.modules):
            fp = fingerprint(m)
            if fp in seen:
                return False
            seen[fp] = name
        return True

    def __repr__(self):
        return f"IndecSet({self.algebra.label or '?'}: {len(self.modules)} classes, {self.provenance})"


def enumerate_indecomposables_nakayama(a: AlgebraData) -> IndecSet:
    """All quotients P(i)/rad^k P(i), the full class list for a Nakayama algebra."""
    ok, reason = is_nakayama(a)
    if not ok:
        raise OracleError(f"not a Nakayama algebra: {reason}")
    if a.path_len is None:
        raise NotQuiverPresented("need path-length data from a bound quiver construction")
    modules = []
    names = []
    for i in range(a.n_idem):
        ll = loewy_length(projective_module(a, i))
        for keep in range(1, ll + 1):
            m = _truncated_projective(a, i, keep)
            modules.append(m)
            names.append(m.label)
    return IndecSet(a, modules, names, "nakayama-enumeration")


def try_split_known_indec(u: ModuleRep, n: ModuleRep) -> "object":
    """split_summand for a module known to be indecomposable (local End)."""
    return split_summand(u, n, assume_local_end=True)


class Decomposition:
    """Explicit direct-sum decomposition against a known indecomposable list."""

    def __init__(self, module, parts, change_of_basis):
        self.module = module
        self.parts = parts  # list of (name, ModuleRep piece, iso data per split step)
        self.change_of_basis = change_of_basis  # ModuleHom: sum of pieces -> module

    def verify(self) -> bool:
        return self.change_of_basis.is_iso() and self.change_of_basis.verify()

    def part_names(self):
        return [name for name, _, _ in self.parts]

    def __repr__(self):
        return f"Decomposition({'+'.join(self.part_names()) or '0'})"


def decompose_with_indecs(n: ModuleRep, indec: IndecSet) -> Decomposition:
    """Greedy Krull-Schmidt splitting; raises if a remainder resists every class."""
    a = n.algebra
    f = a.field
    candidates = sorted(
        zip(indec.names, indec.modules), key=lambda p: (-p[1].dim, p[0])
    )
    parts = []
    embeddings = []  # columns of each piece inside the original module
    current = n
    into_original = Mat.identity(f, n.dim)
    while not current.is_zero():
        hit = None
        for name, u in candidates:
            if u.dim > current.dim:
                continue
            res = try_split_known_indec(u, current)
            if res.found:
                hit = (name, u, res)
                break
        if hit is None:
            raise OracleError(
                f"module of dimension {current.dim} has no summand in the supplied class list"
            )
        name, u, res = hit
        emb = into_original @ res.mono.matrix
        embeddings.append(emb)
        parts.append((name, u, res))
        comp_cols = res.retraction.matrix.kernel_basis()
        comp, incl = submodule(current, comp_cols)
        into_original = into_original @ incl.matrix
        current = comp
    pieces = [u for _, u, _ in parts]
    ds = direct_sum(a, pieces) if pieces else direct_sum(a, [])
    if pieces:
        cob = embeddings[0]
        for e in embeddings[1:]:
            cob = cob.hstack(e)
    else:
        cob = Mat.zeros(f, n.dim, 0)
    hom = ModuleHom(ds.module, n, cob)
    return Decomposition(n, parts, hom)


# ---------- iterated-extension membership ----------


class MembershipCertificate:
    """Recursively re-verifiable derivation of M in [T]_level."""

    def __init__(self, module, level, kind, add_split=None, ses=None, sub_cert=None, quot_cert=None):
        self.module = module
        self.level = level
        self.kind = kind  # "add" or "ext"
        self.add_split = add_split
        self.ses = ses  # dict with U, E, Q, incl, proj, and split of module into E
        self.sub_cert = sub_cert
        self.quot_cert = quot_cert

    def verify(self) -> bool:
        if self.kind == "add":
            return self.level >= 1 and self.add_split.verify()
        if self.level < 2:
            return False
        s = self.ses
        incl, proj = s["incl"], s["proj"]
        if not incl.verify() or not proj.verify():
            return False
        if incl.rank() != s["U"].dim or proj.rank() != s["Q"].dim:
            return False
        comp = proj.matrix @ incl.matrix
        if not comp.is_zero():
            return False
        if incl.rank() + proj.rank() != s["E"].dim:
            return False
        if not s["module_split"].verify():
            return False
        return (
            self.sub_cert.verify()
            and self.quot_cert.verify()
            and self.sub_cert.level == 1
            and self.level >= 1 + self.quot_cert.level
        )

    def depth(self) -> int:
        if self.kind == "add":
            return 1
        return 1 + self.quot_cert.depth()

    def __repr__(self):
        return f"MembershipCertificate({self.module.label or '?'} at level {self.level}, {self.kind})"


def _add_certificate(m: ModuleRep, pieces, labels, level) -> MembershipCertificate | None:
    split = in_add(m, pieces, labels=labels)
    if split is None:
        return None
    return MembershipCertificate(m, level, "add", add_split=split)


def _submodule_candidates(m: ModuleRep, budget: int, rng) -> list:
    """Stable subspaces to try as the U of an extension, largest first.

    Uses cyclic submodules generated by coordinate vectors and by a few
    seeded random vectors, closed under the action.
    """
    a = m.algebra
    f = a.field
    seen = []
    out = []
    gens = [Mat.zeros(f, m.dim, 1) for _ in range(m.dim)]
    for i in range(m.dim):
        gens[i].data[i][0] = f.one()
    extra = []
    for _ in range(budget):
        v = Mat.zeros(f, m.dim, 1)
        for i in range(m.dim):
            v.data[i][0] = f.random(rng)
        extra.append(v)
    for seed_vec in gens + extra:
        cols = seed_vec
        while True:
            new_cols = []
            for b in range(a.dim):
                img = m.action[b] @ cols
                for j in range(img.cols):
                    new_cols.append(img.col(j))
            grown = span_basis(cols.hstack(Mat.from_cols(f, m.dim, new_cols)))
            if grown.cols == cols.cols:
                break
            cols = grown
        if cols.is_zero() or cols.cols == m.dim:
            continue
        key = tuple(tuple(f.format(x) for x in row) for row in cols.data)
        if key in seen:
            continue
        seen.append(key)
        out.append(cols)
    out.sort(key=lambda c: -c.cols)
    return out


def membership_search(
    m: ModuleRep, t, n: int, budget: int = 8, seed: int = 0, dim_cap: int = 12
) -> MembershipCertificate | None:
    """Sound, incomplete search for M in [T]_{n+1}; None is inconclusive.

    ``t`` may be one module or a list of modules (add of the family).
    """
    pieces = t if isinstance(t, list) else [t]
    labels = [p.label or f"T{i}" for i, p in enumerate(pieces)]
    rng = random.Random(seed)
    return _search(m, pieces, labels, n + 1, budget, rng, dim_cap)


def _search(m, pieces, labels, level, budget, rng, dim_cap):
    cert = _add_certificate(m, pieces, labels, 1)
    if cert is not None:
        return cert
    if level < 2 or m.dim > dim_cap:
        return None
    for cols in _submodule_candidates(m, budget, rng):
        u, incl = submodule(m, cols, label="U")
        u_cert = _add_certificate(u, pieces, labels, 1)
        if u_cert is None:
            continue
        q, proj = quotient_module(m, cols, label="Q")
        q_cert = _search(q, pieces, labels, level - 1, budget, rng, dim_cap)
        if q_cert is None:
            continue
        # middle term is m itself, split data is the identity
        ident = in_add(m, [m], labels=["E"])
        ses = {"U": u, "E": m, "Q": q, "incl": incl, "proj": proj, "module_split": ident}
        return MembershipCertificate(
            m, 1 + q_cert.level, "ext", ses=ses, sub_cert=u_cert, quot_cert=q_cert
        )
    return None


class ExtDimWitness:
    """T together with membership certificates covering an IndecSet."""

    def __init__(self, t_pieces, t_labels, n, certificates):
        self.t_pieces = t_pieces
        self.t_labels = t_labels
        self.n = n
        self.certificates = certificates  # dict name -> MembershipCertificate


def build_extdim_witness(indec: IndecSet, t, n: int, budget: int = 8, seed: int = 0):
    """Try to witness mod-A = [T]_{n+1}; returns (witness, failures)."""
    pieces = t if isinstance(t, list) else [t]
    labels = [p.label or f"T{i}" for i, p in enumerate(pieces)]
    certs = {}
    failures = []
    for name, m in zip(indec.names, indec.modules):
        c = membership_search(m, pieces, n, budget=budget, seed=seed)
        if c is None:
            failures.append(name)
        else:
            certs[name] = c
    return ExtDimWitness(pieces, labels, n, certs), failures


def verify_extdim_witness(w: ExtDimWitness, indec: IndecSet) -> dict:
    """Re-verify every certificate; success establishes ext.dim <= n (upper bound)."""
    report = {"n": w.n, "per_module": {}, "covered": True, "ok": True}
    for name in indec.names:
        cert = w.certificates.get(name)
        if cert is None:
            report["per_module"][name] = "missing"
            report["covered"] = False
            report["ok"] = False
            continue
        good = cert.verify() and cert.level <= w.n + 1
        report["per_module"][name] = "ok" if good else "failed"
        if not good:
            report["ok"] = False
    return report


# ---------- weak resolution dimension witnesses ----------


def verify_exact_chain(modules, maps) -> dict:
    """Exactness of 0 -> M_k -> ... -> M_0 -> 0 given maps[i]: M_{i+1} -> M_i.

    Returns per-node verdicts keyed by module index.
    """
    report = {"nodes": {}, "ok": True}
    ranks = [h.rank() for h in maps]
    for idx, h in enumerate(maps):
        if not h.verify():
            report["nodes"][f"map{idx}"] = "not a module map"
            report["ok"] = False
    for i, h in enumerate(maps[:-1]):
        comp = h.matrix @ maps[i + 1].matrix
        if not comp.is_zero():
            report["nodes"][f"compose{i}"] = "nonzero composition"
            report["ok"] = False
    # interior exactness: ker(maps[i]) = im(maps[i+1])
    for i in range(len(maps) - 1):
        mid = maps[i].source
        if ranks[i] + ranks[i + 1] != mid.dim:
            report["nodes"][f"node{i + 1}"] = (
                f"rank gap: {ranks[i]} + {ranks[i + 1]} != dim {mid.dim}"
            )
            report["ok"] = False
    if maps:
        if ranks[0] != maps[0].target.dim:
            report["nodes"]["right-end"] = "not surjective"
            report["ok"] = False
        if ranks[-1] != maps[-1].source.dim:
            report["nodes"]["left-end"] = "not injective"
            report["ok"] = False
    return report


def verify_wresol_witness(mgen_pieces, n: int, items) -> dict:
    """Verify supplied chains 0 -> M_n -> ... -> M_0 -> Y -> 0 with X | Y.

    ``items`` is a list of dicts with keys X, Y, maps (list, maps[0]: M_0 -> Y),
    and x_split (AddSplit of X into [Y]).  Success establishes
    w.resol.dim <= n for the covered X.
    """
    pieces = mgen_pieces if isinstance(mgen_pieces, list) else [mgen_pieces]
    labels = [p.label or f"M{i}" for i, p in enumerate(pieces)]
    report = {"n": n, "items": [], "ok": True}
    for item in items:
        verdict = {"x": item["X"].label or "?", "checks": {}}
        maps = item["maps"]
        if len(maps) != n + 1:
            verdict["checks"]["length"] = f"expected {n + 1} maps, got {len(maps)}"
        chain = verify_exact_chain([item["Y"]] + [h.source for h in maps], maps)
        verdict["checks"]["exactness"] = "ok" if chain["ok"] else chain["nodes"]
        for i, h in enumerate(maps):
            term = h.source
            member = in_add(term, pieces, labels=labels)
            verdict["checks"][f"M{i} in add M"] = "ok" if member is not None else "failed"
        xs = item["x_split"]
        verdict["checks"]["X | Y"] = "ok" if (xs is not None and xs.verify()) else "failed"
        verdict["ok"] = all(v == "ok" for v in verdict["checks"].values())
        report["items"].append(verdict)
        report["ok"] = report["ok"] and verdict["ok"]
    return report


# ---------- exhaustive census (expensive, flag-gated) ----------


def census_nakayama_completeness(a: AlgebraData, dim_cap: int = 3, max_tuples: int = 1 << 21) -> dict:
    """Exhaustively enumerate small modules over F_p and match them to the list.

    Every action-matrix tuple on the generators up to ``dim_cap`` total
    dimension must decompose into the enumerated indecomposables.  Only
    sensible over small prime fields; the tuple count is capped.
    """
    from bocal.linalg import PrimeField

    if not isinstance(a.field, PrimeField):
        raise OracleError("census runs over a prime field")
    p = a.field.p
    indec = enumerate_indecomposables_nakayama(a)
    gens = a.generating_vectors()
    checked = 0
    outside = []
    for total_dim in range(1, dim_cap + 1):
        for vdims in _compositions(total_dim, a.n_idem):
            count = p ** sum(
                _block_entries(a, g, vdims) for g in gens
            )
            if count > max_tuples:
                raise OracleError(
                    f"census budget exceeded at dimension vector {vdims}: {count} tuples"
                )
            for mod in _enumerate_modules(a, vdims, gens):
                checked += 1
                try:
                    decompose_with_indecs(mod, indec)
                except OracleError:
                    outside.append(vdims)
    return {"checked": checked, "outside": outside, "ok": not outside}


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _gen_blocks(a: AlgebraData, gvec):
    """Nonzero Peirce blocks (row_idem, col_idem) of a generator vector."""
    f = a.field
    blocks = set()
    for i, c in enumerate(gvec):
        if not f.is_zero(c):
            blocks.add((a.row_idem[i], a.col_idem[i]))
    return blocks


def _block_entries(a, gvec, vdims):
    return sum(vdims[r] * vdims[c] for r, c in _gen_blocks(a, gvec))


def _enumerate_modules(a: AlgebraData, vdims, gens):
    """All graded action tuples on the generators that satisfy the relations.

    Fills generator blocks entry by entry, extends to the whole basis by
    multiplicativity, and keeps the tuples where the extension is
    consistent (checked through verify_axioms).
    """
    f = a.field
    p = a.field.p
    vertex = []
    for v, d in enumerate(vdims):
        vertex.extend([v] * d)
    n = len(vertex)
    positions = []
    for gi, g in enumerate(gens):
        blocks = sorted(_gen_blocks(a, g))
        for (r, c) in blocks:
            for i in range(n):
                for j in range(n):
                    if vertex[i] == r and vertex[j] == c:
                        positions.append((gi, i, j))
    for assignment in itertools.product(range(p), repeat=len(positions)):
        gen_mats = [Mat.zeros(f, n, n) for _ in gens]
        for (gi, i, j), val in zip(positions, assignment):
            gen_mats[gi].data[i][j] = val
        mod = _module_from_generator_mats(a, vertex, gen_mats, gens)
        if mod is not None:
            yield mod


def _module_from_generator_mats(a, vertex, gen_mats, gens):
    """Extend generator actions to all basis elements, or None if inconsistent."""
    f = a.field
    n = len(vertex)
    # express each basis element as words in generators by closure
    known = {}
    for i in range(a.n_idem):
        m = Mat.zeros(f, n, n)
        for r in range(n):
            if vertex[r] == i:
                m.data[r][r] = f.one()
        known[i] = m
    gen_coords = [list(g) for g in gens]
    frontier = []
    for g, gm in zip(gen_coords, gen_mats):
        support = [i for i, c in enumerate(g) if not f.is_zero(c)]
        if len(support) == 1 and f.eq(g[support[0]], f.one()):
            known[support[0]] = gm
            frontier.append(support[0])
    changed = True
    while changed:
        changed = False
        for i in list(known):
            for j in list(known):
                entry = a.product_basis(i, j)
                if len(entry) == 1:
                    (k, c), = entry.items()
                    if k not in known and f.eq(c, f.one()):
                        known[k] = known[i] @ known[j]
                        changed = True
    if len(known) != a.dim:
        return None
    action = [known[i] for i in range(a.dim)]
    mod = ModuleRep(a, vertex, action)
    if mod.verify_axioms():
        return mod
    return None
