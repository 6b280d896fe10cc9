"""The equalizer counterexample family and its mechanical verification.

For n >= 2 the pair g, h : F(t, x_1, ..., x_{n-1}) -> F(a, b) given by
g(t) = a, h(t) = b and g(x_i) = h(x_i) = (a^-i b^i)^2 is a pair of
embeddings whose equalizer contains a subgroup of rank 2n - 2, so the
classical expectation that equalizers of embeddings have rank at most n
fails for every n >= 3.  This module builds the witnessing graphs, checks
every step (injectivity, edge condition, telescoping, rank counts), and
produces the stabilized non-injective variants and the truncated cover
whose cycle count grows without bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colored import ColoredGraph, EqualizerCertificate, certify_equalizer_subgroup
from .graphs import LabeledGraph, SubgroupHandle, graph_from_generators, is_folded, rank
from .oracle import iter_reduced_words
from .words import Alphabet, Homomorphism, Word, inclusion, swap_generators


class VerificationError(RuntimeError):
    """A mechanically checkable claim failed; signals an implementation
    bug, since every claim verified here admits a proof."""


def codomain_alphabet() -> Alphabet:
    return Alphabet(("a", "b"))


def domain_alphabet(n: int) -> Alphabet:
    return Alphabet(("t",) + tuple(f"x{i}" for i in range(1, n)))


def color_word(codomain: Alphabet, i: int) -> Word:
    """Color of the i-th chain vertex: a^-i b^i."""
    return Word(codomain, [(0, -1)] * i + [(1, 1)] * i)


def ladder_loop_word(codomain: Alphabet, i: int) -> Word:
    """Label b^i a^-i b^i of the i-th rung loop of the ladder graph."""
    return Word(codomain, [(1, 1)] * i + [(0, -1)] * i + [(1, 1)] * i)


def nielsen_word(domain: Alphabet, i: int) -> Word:
    """Basis element t^i x_i of the rewritten free basis of the domain."""
    return Word(domain, [(0, 1)] * i + [(i, 1)])


def family_homomorphisms(n: int) -> tuple[Homomorphism, Homomorphism]:
    """The pair (g, h) for a given n; they agree on every x_i and send t
    to the two different codomain generators."""
    if n < 2:
        raise ValueError("the family is defined for n >= 2")
    domain = domain_alphabet(n)
    codomain = codomain_alphabet()
    squares = [color_word(codomain, i) ** 2 for i in range(1, n)]
    g = Homomorphism(domain, codomain, [codomain.gen("a")] + squares)
    h = Homomorphism(domain, codomain, [codomain.gen("b")] + squares)
    return g, h


def build_delta(n: int) -> LabeledGraph:
    """The ladder graph over {a, b}: an a-loop at the base, a forward
    b-ray and a backward b-ray of length n - 1, and for each i a chain
    of i a-edges from the i-th forward vertex to the i-th backward one
    (disjoint interiors).  Folded by construction; rank n."""
    if n < 2:
        raise ValueError("the ladder graph is defined for n >= 2")
    codomain = codomain_alphabet()
    a, b = 0, 1
    graph = LabeledGraph(codomain, base=0)
    graph.add_edge(0, 0, a)
    forward = [0]
    for i in range(1, n):
        forward.append(graph.add_vertex())
        graph.add_edge(forward[i - 1], forward[i], b)
    backward = [0]
    for i in range(1, n):
        backward.append(graph.add_vertex())
        # the backward ray is traversed by b^-1 steps from the base
        graph.add_edge(backward[i], backward[i - 1], b)
    for i in range(1, n):
        # i positive a-edges pointing back toward forward[i]
        prev = forward[i]
        for _ in range(i - 1):
            mid = graph.add_vertex()
            graph.add_edge(mid, prev, a)
            prev = mid
        graph.add_edge(backward[i], prev, a)
    return graph


def build_gamma(n: int) -> ColoredGraph:
    """The chain-of-loops colored graph: vertices 0..n-1 joined by
    t-edges, an x_i-loop at vertex 0 and at vertex i, vertex i colored
    a^-i b^i.  Folded, core, and consistent with (g, h)."""
    if n < 2:
        raise ValueError("the chain graph is defined for n >= 2")
    domain = domain_alphabet(n)
    codomain = codomain_alphabet()
    g, h = family_homomorphisms(n)
    graph = LabeledGraph(domain, base=0)
    for i in range(1, n):
        graph.add_vertex(i)
        graph.add_edge(i - 1, i, 0)
    for i in range(1, n):
        graph.add_edge(0, 0, i)
        graph.add_edge(i, i, i)
    colors = {i: color_word(codomain, i) for i in range(n)}
    return ColoredGraph(graph, g, h, colors)


@dataclass
class FamilyInstance:
    """Everything attached to one n: the pair (g, h), the colored chain
    graph, and the ladder graph used for the injectivity argument."""

    n: int
    domain: Alphabet
    codomain: Alphabet
    g: Homomorphism
    h: Homomorphism
    gamma: ColoredGraph
    delta: LabeledGraph


def build_family(n: int) -> FamilyInstance:
    g, h = family_homomorphisms(n)
    return FamilyInstance(
        n=n,
        domain=g.domain,
        codomain=g.codomain,
        g=g,
        h=h,
        gamma=build_gamma(n),
        delta=build_delta(n),
    )


def verify_free_basis(images: list[Word]) -> tuple[bool, int]:
    """Fold the wedge on the given words; they freely generate iff the
    resulting rank equals their number.  Returns (free, rank)."""
    if not images:
        raise ValueError("verify_free_basis requires a nonempty list")
    handle = graph_from_generators(images[0].alphabet, images)
    return handle.rank == len(images), handle.rank


@dataclass
class InjectivityReport:
    injective: bool
    rank: int


def _mutually_contained(handle_a: SubgroupHandle, handle_b: SubgroupHandle) -> bool:
    return (all(handle_b.contains(w) for w in handle_a.basis())
            and all(handle_a.contains(w) for w in handle_b.basis()))


def verify_injectivity(inst: FamilyInstance) -> tuple[InjectivityReport, InjectivityReport]:
    """Certify that g and h are embeddings.

    Primary route: fold the generator images and compare rank with n.
    Cross-checks retrace the argument behind the construction: rewriting
    the basis by t^i x_i sends the g-images to the ladder loops
    b^i a^-i b^i, the ladder graph represents exactly the subgroup those
    loops generate together with a, and swapping the codomain generators
    carries the h-images onto inverses of the g-images."""
    n, codomain = inst.n, inst.codomain
    g_free, g_rank = verify_free_basis(list(inst.g.images))
    h_free, h_rank = verify_free_basis(list(inst.h.images))
    if not g_free or not h_free:
        raise VerificationError(
            f"image fold ranks ({g_rank}, {h_rank}) differ from n = {n}")

    ladder_loops = [ladder_loop_word(codomain, i) for i in range(1, n)]
    for i in range(1, n):
        if inst.g(nielsen_word(inst.domain, i)) != ladder_loops[i - 1]:
            raise VerificationError(f"g(t^{i} x_{i}) is not the {i}-th ladder loop")

    a = codomain.gen("a")
    from_loops = graph_from_generators(codomain, [a] + ladder_loops)
    from_squares = graph_from_generators(codomain, [a] + list(inst.g.images[1:]))
    if from_loops.rank != n or not _mutually_contained(from_loops, from_squares):
        raise VerificationError("<a, ladder loops> and <a, squares> disagree")

    delta_handle = SubgroupHandle(inst.delta)
    if delta_handle.rank != n or not _mutually_contained(delta_handle, from_loops):
        raise VerificationError("the ladder graph does not represent <a, ladder loops>")

    # redundant route for h: swapping a <-> b inverts each square
    swapped = [swap_generators(w) for w in inst.h.images]
    if swapped[0] != a or any(swapped[i] != ~inst.g.images[i] for i in range(1, n)):
        raise VerificationError("swapped h-images are not inverses of the g-images")
    swap_free, swap_rank = verify_free_basis(swapped)
    if not swap_free or swap_rank != n:
        raise VerificationError("swapped h-images do not freely generate")

    return InjectivityReport(True, g_rank), InjectivityReport(True, h_rank)


@dataclass
class VerificationReport:
    """Outcome of the full check at one n."""

    n: int
    g_injective: bool
    g_image_rank: int
    h_injective: bool
    h_image_rank: int
    certificate: EqualizerCertificate
    claimed_rank: int
    conjecture_violated: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "gInjective": self.g_injective,
            "hInjective": self.h_injective,
            "equalizerRank": self.certificate.rank,
            "colorsInjective": self.certificate.colors_injective,
            "conjectureViolated": self.conjecture_violated,
            "basisWitness": [str(w) for w, _, _ in self.certificate.basis_checked],
        }


def verify_main(n: int) -> VerificationReport:
    """Assemble the instance at n, certify everything, and report.

    Checks: both maps injective; the chain graph has n vertices and
    3n - 3 positive edges; its based-loop subgroup is certified inside
    the equalizer with rank exactly 2n - 2 and injective colors."""
    inst = build_family(n)
    g_report, h_report = verify_injectivity(inst)
    certificate = certify_equalizer_subgroup(inst.gamma)
    graph = inst.gamma.graph
    if len(graph.vertices) != n or len(graph.edges) != 3 * n - 3:
        raise VerificationError(
            f"chain graph counts |V|={len(graph.vertices)}, |E+|={len(graph.edges)} "
            f"differ from (n, 3n-3)")
    claimed = 2 * n - 2
    if certificate.rank != claimed:
        raise VerificationError(f"certified rank {certificate.rank} != 2n-2 = {claimed}")
    if not certificate.colors_injective:
        raise VerificationError("color map is not injective")
    return VerificationReport(
        n=n,
        g_injective=g_report.injective,
        g_image_rank=g_report.rank,
        h_injective=h_report.injective,
        h_image_rank=h_report.rank,
        certificate=certificate,
        claimed_rank=claimed,
        conjecture_violated=claimed > n,
    )


@dataclass
class StabilizedPair:
    """A pair (alpha, beta) on a larger free group, built by freely
    adjoining dummy generators to (g, h) so that one or both maps gain a
    kernel while the certified equalizer subgroup survives."""

    r: int
    mode: str
    alpha: Homomorphism
    beta: Homomorphism
    kernel_witnesses: list[tuple[str, Word]]
    base_rank: int
    bound: int
    embedded_basis: list[Word]


def _embed_family(m: int, extra_names: tuple[str, ...]):
    domain_m = domain_alphabet(m)
    g_m, h_m = family_homomorphisms(m)
    domain = Alphabet(domain_m.names + extra_names)
    codomain = Alphabet(("a", "b", "s"))
    lift = inclusion(codomain_alphabet(), codomain)
    g_images = [lift(w) for w in g_m.images]
    h_images = [lift(w) for w in h_m.images]
    certificate = certify_equalizer_subgroup(build_gamma(m))
    embed = inclusion(domain_m, domain)
    basis = [embed(w) for w, _, _ in certificate.basis_checked]
    return domain, codomain, g_images, h_images, certificate, basis


def stabilize_one_noninjective(r: int) -> StabilizedPair:
    """Extend the pair at m = r - 1 by one generator z with
    alpha(z) = s (fresh), beta(z) = 1.  alpha stays injective, beta
    kills z, and the equalizer still contains the embedded rank-(2r-4)
    subgroup; 2r - 4 > r exactly when r >= 5."""
    if r < 5:
        raise ValueError("one-sided stabilization needs r >= 5")
    m = r - 1
    domain, codomain, g_images, h_images, certificate, basis = _embed_family(m, ("z",))
    alpha = Homomorphism(domain, codomain, g_images + [codomain.gen("s")])
    beta = Homomorphism(domain, codomain, h_images + [Word(codomain)])
    witness = domain.gen("z")
    if not beta(witness).is_identity():
        raise VerificationError("beta(z) should be the identity")
    alpha_free, alpha_rank = verify_free_basis(list(alpha.images))
    if not alpha_free or alpha_rank != r:
        raise VerificationError("alpha images do not freely generate rank r")
    for word in basis:
        if alpha(word) != beta(word):
            raise VerificationError(f"embedded basis word {word} is not equalized")
    bound = 2 * m - 2
    if not bound > r:
        raise VerificationError(f"bound {bound} does not exceed r = {r}")
    return StabilizedPair(
        r=r,
        mode="one",
        alpha=alpha,
        beta=beta,
        kernel_witnesses=[("beta", witness)],
        base_rank=certificate.rank,
        bound=bound,
        embedded_basis=basis,
    )


def stabilize_two_noninjective(r: int) -> StabilizedPair:
    """Extend the pair at m = r - 2 by generators z1, z2 with
    alpha(z1) = 1, alpha(z2) = s, beta(z1) = s, beta(z2) = 1: both maps
    gain a kernel, and 2r - 6 > r exactly when r >= 7."""
    if r < 7:
        raise ValueError("two-sided stabilization needs r >= 7")
    m = r - 2
    domain, codomain, g_images, h_images, certificate, basis = _embed_family(m, ("z1", "z2"))
    s = codomain.gen("s")
    one = Word(codomain)
    alpha = Homomorphism(domain, codomain, g_images + [one, s])
    beta = Homomorphism(domain, codomain, h_images + [s, one])
    w1, w2 = domain.gen("z1"), domain.gen("z2")
    if not alpha(w1).is_identity() or not beta(w2).is_identity():
        raise VerificationError("kernel witnesses do not map to the identity")
    for word in basis:
        if alpha(word) != beta(word):
            raise VerificationError(f"embedded basis word {word} is not equalized")
    bound = 2 * m - 2
    if not bound > r:
        raise VerificationError(f"bound {bound} does not exceed r = {r}")
    return StabilizedPair(
        r=r,
        mode="two",
        alpha=alpha,
        beta=beta,
        kernel_witnesses=[("alpha", w1), ("beta", w2)],
        base_rank=certificate.rank,
        bound=bound,
        embedded_basis=basis,
    )


def infinite_rank_truncation(radius: int) -> tuple[LabeledGraph, int]:
    """Radius-R piece of the cover attached to the exponent-difference
    map x -> +1, y -> -1: vertices -R..R, an x-edge k -> k+1 and a
    y-edge k+1 -> k between consecutive vertices, base 0.  Each
    consecutive pair carries one independent cycle, so the Betti number
    is 2R and grows without bound with the radius."""
    if radius < 1:
        raise ValueError("the truncation needs radius >= 1")
    alphabet = Alphabet(("x", "y"))
    graph = LabeledGraph(alphabet, base=0)
    for k in range(-radius, radius + 1):
        graph.add_vertex(k)
    for k in range(-radius, radius):
        graph.add_edge(k, k + 1, 0)
    for k in range(-radius + 1, radius + 1):
        graph.add_edge(k, k - 1, 1)
    if not is_folded(graph):
        raise VerificationError("the truncated cover should be folded")
    return graph, rank(graph)


def exponent_characterization_check(maxlen: int) -> bool:
    """For alpha(x) = a, alpha(y) = 1, beta(x) = 1, beta(y) = a:
    alpha(w) = beta(w) holds exactly when the exponent sums of x and y
    in w agree.  Checked exhaustively over all reduced words of length
    at most maxlen."""
    if maxlen < 1:
        raise ValueError("maxlen must be at least 1")
    domain = Alphabet(("x", "y"))
    codomain = Alphabet(("a",))
    a = codomain.gen("a")
    one = Word(codomain)
    alpha = Homomorphism(domain, codomain, [a, one])
    beta = Homomorphism(domain, codomain, [one, a])
    for word in iter_reduced_words(domain, maxlen):
        equalized = alpha(word) == beta(word)
        balanced = word.exponent_sum(0) == word.exponent_sum(1)
        if equalized != balanced:
            return False
    return True
