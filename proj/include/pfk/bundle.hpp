#pragma once

// Quotient vector bundles over finite spaces, classified by kernel maps:
// total space, sections, the support/restriction pair σ ⊣ γ, spectral kernel,
// classification, morphisms and kernel-map enumeration.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfk/hyper.hpp"
#include "pfk/sober.hpp"

namespace pfk {

/// Everything about a (base, carrier) pair that does not depend on κ.
struct BundleContext {
  FinSpace base;
  FqSpace carrier;
  SpectrumTopology vietoris;
  SpectrumTopology open_support;
  Soberification sob;
  std::vector<Bitset> members;  // point set of each subspace

  const SubLattice& sub() const { return vietoris.sub_lattice; }
  const Spectrum& spectrum() const { return sob.spectrum; }
  const OpenLocale& opens() const { return sob.opens; }
  /// Open set of X for point i of the spectrum.
  const Bitset& prime_open(Point i) const { return sob.opens.open(sob.spectrum.primes[i]); }
};

using BundleContextPtr = std::shared_ptr<const BundleContext>;

inline BundleContextPtr make_context(const FinSpace& base, const FqSpace& carrier, const Limits& limits = {}) {
  auto c = std::make_shared<BundleContext>();
  c->base = base;
  c->carrier = carrier;
  c->vietoris = spectrum_topology(carrier, TopologyKind::vietoris, limits);
  c->open_support = spectrum_topology(carrier, TopologyKind::open_support, limits);
  c->sob = soberify(base, limits);
  c->members = detail::subspace_point_sets(carrier, c->vietoris.sub_lattice);
  return c;
}

struct QVBundle {
  BundleContextPtr ctx;
  std::vector<Elem> kappa;  // per base point, an element of Sub A
  FinSpace total;           // E
  std::vector<std::vector<Point>> fiber;  // fiber[x][i]: E point of the i-th coset of A/κ(x)
  std::vector<Point> q;                   // A × X -> E, indexed a * |X| + x
  std::vector<Point> pi;                  // E -> X
  std::vector<Bitset> osupp;              // open support of â, per vector index
  Verdict addition_continuous = Verdict::unverified;
  Verdict scalar_continuous = Verdict::unverified;
  bool zero_section_closed = false;

  const FinSpace& base() const { return ctx->base; }
  const FqSpace& carrier() const { return ctx->carrier; }
  const SubLattice& sub() const { return ctx->sub(); }
  const Subspace& kernel(Point x) const { return sub().subspace(kappa[x]); }
  Point point(std::size_t a, Point x) const { return q[a * base().size() + x]; }
  Point zero(Point x) const { return point(0, x); }
  /// κ as an element-id list, e.g. {"0:", "1:1"}.
  std::vector<std::string> kernel_keys() const {
    std::vector<std::string> out;
    for (auto k : kappa) out.push_back(sub().lattice.id(k));
    return out;
  }
};

/// Same base, carrier and kernel map.
inline bool same_bundle(const QVBundle& a, const QVBundle& b) {
  return a.base() == b.base() && a.carrier().q() == b.carrier().q() && a.carrier().dim() == b.carrier().dim() &&
         a.carrier().carrier() == b.carrier().carrier() && a.kernel_keys() == b.kernel_keys();
}

namespace detail {

inline FinSpace scalar_space(const Field& f) {
  std::vector<std::string> ids;
  for (Scalar c = 0; c < f.q(); ++c) ids.push_back(std::string(1, digit_char(c)));
  return FinSpace::discrete(std::move(ids));
}

/// Fibered product E ×_X E as a subspace of E × E, with the pair list.
inline std::pair<FinSpace, std::vector<std::pair<Point, Point>>> fibered_square(const QVBundle& b) {
  const auto n = b.total.size();
  auto sq = product(b.total, b.total);
  Bitset keep(n * n);
  std::vector<std::pair<Point, Point>> pairs;
  for (Point e1 = 0; e1 < n; ++e1)
    for (Point e2 = 0; e2 < n; ++e2)
      if (b.pi[e1] == b.pi[e2]) {
        keep.set(e1 * n + e2);
        pairs.emplace_back(e1, e2);
      }
  return {subspace(sq, keep), std::move(pairs)};
}

inline void check_fiber_operations(QVBundle& b, const Limits& limits) {
  const auto n = b.total.size();
  const auto& a = b.carrier();
  if (n * n > std::min<std::uint64_t>(limits.enumeration, 1u << 14)) return;
  // some vector in the coset of each E point
  std::vector<std::size_t> rep(n);
  for (Point x = 0; x < b.base().size(); ++x)
    for (std::size_t v = 0; v < a.vector_count(); ++v) rep[b.point(v, x)] = v;
  auto [dom, pairs] = fibered_square(b);
  CtsMap add{dom, b.total, std::vector<Point>(pairs.size())};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [e1, e2] = pairs[i];
    add.table[i] = b.point(a.index(a.add(a.vector(rep[e1]), a.vector(rep[e2]))), b.pi[e1]);
  }
  b.addition_continuous = check_continuous(add).continuous ? Verdict::pass : Verdict::fail;

  auto scalars = scalar_space(a.field());
  auto sdom = product(scalars, b.total);
  CtsMap scale{sdom, b.total, std::vector<Point>(sdom.size())};
  for (Scalar c = 0; c < a.q(); ++c)
    for (Point e = 0; e < n; ++e)
      scale.table[c * n + e] = b.point(a.index(a.scale(c, a.vector(rep[e]))), b.pi[e]);
  b.scalar_continuous = check_continuous(scale).continuous ? Verdict::pass : Verdict::fail;
}

}  // namespace detail

/// Builds the bundle with kernel map `kappa` (elements of ctx->sub()).
/// Rejects a kernel map that is not continuous for the lower Vietoris
/// topology, and a carrier for which q fails to be open.
inline QVBundle build_bundle(BundleContextPtr ctx, std::vector<Elem> kappa, const Limits& limits = {}) {
  const auto& x = ctx->base;
  const auto& a = ctx->carrier;
  if (kappa.size() != x.size()) throw InvalidInput("kernel map must assign a subspace to every base point");
  for (auto k : kappa)
    if (k >= ctx->sub().size()) throw InvalidInput("kernel map value is not a subspace of the carrier");

  auto cont = check_continuous(CtsMap{x, ctx->vietoris.space, kappa});
  if (!cont.continuous)
    throw Rejected("kernel map is not continuous for the lower Vietoris topology",
                   ctx->vietoris.space.names(*cont.witness));

  QVBundle b;
  b.ctx = ctx;
  b.kappa = std::move(kappa);
  const auto nx = x.size();
  const auto na = a.vector_count();
  std::vector<std::string> ids;
  b.fiber.resize(nx);
  b.q.assign(na * nx, 0);
  for (Point p = 0; p < nx; ++p) {
    const auto& k = b.kernel(p);
    constexpr Point unset = static_cast<Point>(-1);
    std::vector<Point> rep_point(na, unset);
    for (std::size_t v = 0; v < na; ++v) {
      const auto r = a.index(k.reduce(a.field(), a.vector(v)));
      if (rep_point[r] == unset) {
        rep_point[r] = ids.size();
        b.fiber[p].push_back(ids.size());
        ids.push_back("(" + x.id(p) + "," + a.format(a.vector(r)) + ")");
        b.pi.push_back(p);
      }
      b.q[v * nx + p] = rep_point[r];
    }
  }
  auto ax = product(a.carrier(), x);
  b.total = quotient(ax, std::move(ids), b.q);

  CtsMap qmap{ax, b.total, b.q};
  for (Point s = 0; s < ax.size(); ++s)
    if (!b.total.is_open(qmap.image(ax.nbhd(s))))
      throw Rejected("quotient map q is not open for this carrier topology", ax.names(ax.nbhd(s)));
  CtsMap pimap{b.total, x, b.pi};
  if (!check_continuous(pimap).continuous) throw InternalError("bundle projection is not continuous");
  if (!is_open_map(pimap)) throw InternalError("bundle projection is not open");

  b.osupp.reserve(na);
  for (std::size_t v = 0; v < na; ++v) {
    Bitset nonzero(nx);
    for (Point p = 0; p < nx; ++p)
      if (!ctx->members[b.kappa[p]].test(v)) nonzero.set(p);
    b.osupp.push_back(x.interior(nonzero));
  }

  Bitset zeros(b.total.size());
  for (Point p = 0; p < nx; ++p) zeros.set(b.zero(p));
  b.zero_section_closed = b.total.is_closed(zeros);
  detail::check_fiber_operations(b, limits);
  return b;
}

inline QVBundle build_bundle(const FinSpace& base, const FqSpace& carrier, const std::vector<Subspace>& kappa,
                             const Limits& limits = {}) {
  auto ctx = make_context(base, carrier, limits);
  std::vector<Elem> k;
  for (const auto& v : kappa) k.push_back(ctx->sub().element(v));
  return build_bundle(ctx, std::move(k), limits);
}

inline QVBundle trivial_bundle(BundleContextPtr ctx, const Limits& limits = {}) {
  const auto zero = ctx->sub().element(ctx->carrier.zero_subspace());
  return build_bundle(ctx, std::vector<Elem>(ctx->base.size(), zero), limits);
}

inline QVBundle trivial_bundle(const FqSpace& carrier, const FinSpace& base, const Limits& limits = {}) {
  return trivial_bundle(make_context(base, carrier, limits), limits);
}

/// The universal bundle over Sub A with the lower Vietoris topology: κ = id.
inline QVBundle universal_bundle(const FqSpace& carrier, const Limits& limits = {}) {
  auto vietoris = spectrum_topology(carrier, TopologyKind::vietoris, limits);
  std::vector<Elem> id(vietoris.sub_lattice.size());
  for (Elem e = 0; e < id.size(); ++e) id[e] = e;
  return build_bundle(make_context(vietoris.space, carrier, limits), std::move(id), limits);
}

/// â as a table X -> E.
inline std::vector<Point> section(const QVBundle& b, const Vector& a) {
  const auto v = b.carrier().index(a);
  std::vector<Point> s(b.base().size());
  for (Point x = 0; x < s.size(); ++x) s[x] = b.point(v, x);
  if (!check_continuous(CtsMap{b.base(), b.total, s}).continuous) throw InternalError("section is not continuous");
  return s;
}

/// {x : â(x) ≠ 0}.
inline Bitset nonzero_set(const QVBundle& b, const Vector& a) {
  const auto v = b.carrier().index(a);
  Bitset out(b.base().size());
  for (Point x = 0; x < out.size(); ++x)
    if (!b.ctx->members[b.kappa[x]].test(v)) out.set(x);
  return out;
}

inline const Bitset& open_support(const QVBundle& b, const Vector& a) { return b.osupp[b.carrier().index(a)]; }

/// σ(V) = ⋃_{a ∈ V} osupp â.
inline Bitset sigma(const QVBundle& b, const Subspace& v) {
  Bitset out(b.base().size());
  for (const auto& a : v.elements(b.carrier().field())) out |= open_support(b, a);
  return out;
}

struct GammaResult {
  Subspace value;
  bool was_subspace = true;  // {a : osupp â ⊆ U} was already closed under + and scalars
};

/// γ(U) = span{a : osupp â ⊆ U}.
inline GammaResult gamma(const QVBundle& b, const Bitset& u) {
  const auto& a = b.carrier();
  std::vector<Vector> gens;
  std::size_t members = 0;
  for (std::size_t v = 0; v < a.vector_count(); ++v)
    if (b.osupp[v].is_subset_of(u)) {
      gens.push_back(a.vector(v));
      ++members;
    }
  GammaResult r{a.span(std::move(gens)), true};
  r.was_subspace = r.value.elements(a.field()).size() == members;
  return r;
}

struct SigmaGamma {
  LatticeMap sigma;  // Sub A -> 𝒪(X)
  LatticeMap gamma;  // 𝒪(X) -> Sub A
  AdjunctionReport adjunction;
  bool sets_were_subspaces = true;
  std::vector<Bitset> non_subspace_opens;
};

inline SigmaGamma verify_sigma_gamma(const QVBundle& b) {
  const auto& sub = b.sub();
  const auto& ox = b.ctx->opens();
  SigmaGamma sg;
  sg.sigma = LatticeMap{sub.lattice, ox.locale.lattice(), std::vector<Elem>(sub.size())};
  for (Elem e = 0; e < sub.size(); ++e) sg.sigma.table[e] = ox.element(sigma(b, sub.subspace(e)));
  sg.gamma = LatticeMap{ox.locale.lattice(), sub.lattice, std::vector<Elem>(ox.opens.size())};
  for (Elem u = 0; u < ox.opens.size(); ++u) {
    auto g = gamma(b, ox.open(u));
    sg.gamma.table[u] = sub.element(g.value);
    if (!g.was_subspace) {
      sg.sets_were_subspaces = false;
      sg.non_subspace_opens.push_back(ox.open(u));
    }
  }
  sg.adjunction = verify_adjunction(sg.sigma, sg.gamma);
  return sg;
}

struct SpectralKernel {
  std::vector<Elem> values;  // per point of the spectrum of 𝒪(X)
  CtsMap map;                // Σ𝒪(X) -> Sub A (lower Vietoris)
  ContinuityReport continuity;
};

/// 𝔨(P) = γ(P) on prime opens; κ(x) ⊆ 𝔨(sob x) is asserted.
inline SpectralKernel spectral_kernel(const QVBundle& b) {
  const auto& ctx = *b.ctx;
  const auto m = ctx.spectrum().primes.size();
  SpectralKernel k;
  k.values.resize(m);
  for (Point i = 0; i < m; ++i) k.values[i] = b.sub().element(gamma(b, ctx.prime_open(i)).value);
  k.map = CtsMap{ctx.spectrum().space, ctx.vietoris.space, k.values};
  k.continuity = check_continuous(k.map);
  for (Point x = 0; x < b.base().size(); ++x)
    if (!b.sub().lattice.leq(b.kappa[x], k.values[ctx.sob.sob(x)]))
      throw InternalError("κ(x) is not contained in 𝔨(sob x) at " + b.base().id(x));
  return k;
}

struct BundleClassification {
  bool osp_pointwise = true;
  std::optional<Vector> osp_pointwise_witness;  // a with {x : â(x) ≠ 0} not open
  bool osp_factorization = true;
  std::optional<Point> osp_factorization_witness;  // x with κ(x) ≠ 𝔨(sob x)
  bool osp_topology = true;
  std::optional<Bitset> osp_topology_witness;  // open-support open with non-open preimage
  bool open_support_property = true;

  bool kfrak_continuous = true;
  std::optional<Bitset> kfrak_witness;  // lower Vietoris open
  bool spectral = false;
  bool sober = false;
  bool base_sober = false;
  bool sob_surjective = false;
  bool zero_section_closed = false;

  bool implication_holds = true;
  std::optional<std::pair<Point, Point>> implication_witness;  // spectrum points P ⊆ Q
  bool intersection_criterion = true;
  std::optional<Point> intersection_witness;  // carrier point whose neighbourhood fails
  Verdict kernel_identity = Verdict::unverified;
  bool sigma_gamma_adjoint = true;
  bool gamma_sets_were_subspaces = true;
  /// x ⊑ y ⟹ κ(x) = κ(y); evaluated for spectral bundles with κ in Max A.
  std::optional<bool> max_kernel_constant;

  SpectralKernel kfrak;
};

namespace detail {

/// Topological equivalence in lower Vietoris, cross-checked against equality
/// of closures in the carrier.
inline bool vietoris_equivalent(const BundleContext& ctx, Elem u, Elem v) {
  const bool same = ctx.vietoris.space.nbhd(u) == ctx.vietoris.space.nbhd(v);
  const auto& c = ctx.carrier.carrier();
  if (same != (c.closure(ctx.members[u]) == c.closure(ctx.members[v])))
    throw InternalError("lower Vietoris equivalence disagrees with equality of closures");
  return same;
}

/// U_S = {P prime : S ⊄ P} for an open S of X.
inline Bitset u_of(const BundleContext& ctx, const Bitset& s) {
  const auto m = ctx.spectrum().primes.size();
  Bitset out(m);
  for (Point i = 0; i < m; ++i)
    if (!s.is_subset_of(ctx.prime_open(i))) out.set(i);
  return out;
}

}  // namespace detail

inline BundleClassification classify_bundle(const QVBundle& b, const Limits& limits = {}) {
  const auto& ctx = *b.ctx;
  const auto& x = b.base();
  const auto& a = b.carrier();
  BundleClassification c;

  for (std::size_t v = 0; v < a.vector_count() && c.osp_pointwise; ++v) {
    const auto s = nonzero_set(b, a.vector(v));
    if (!x.is_open(s)) {
      c.osp_pointwise = false;
      c.osp_pointwise_witness = a.vector(v);
    }
  }
  c.kfrak = spectral_kernel(b);
  for (Point p = 0; p < x.size() && c.osp_factorization; ++p)
    if (b.kappa[p] != c.kfrak.values[ctx.sob.sob(p)]) {
      c.osp_factorization = false;
      c.osp_factorization_witness = p;
    }
  auto os = check_continuous(CtsMap{x, ctx.open_support.space, b.kappa});
  c.osp_topology = os.continuous;
  c.osp_topology_witness = os.witness;
  if (c.osp_pointwise != c.osp_factorization || c.osp_pointwise != c.osp_topology)
    throw InternalError("open support property criteria disagree");
  c.open_support_property = c.osp_pointwise;

  c.kfrak_continuous = c.kfrak.continuity.continuous;
  c.kfrak_witness = c.kfrak.continuity.witness;
  c.base_sober = ctx.sob.injective && ctx.sob.surjective;
  c.sob_surjective = ctx.sob.surjective;
  c.spectral = c.open_support_property && c.kfrak_continuous;
  c.sober = c.base_sober && c.open_support_property;
  c.zero_section_closed = b.zero_section_closed;

  const auto& spec = ctx.spectrum();
  const auto m = spec.primes.size();
  for (Point p = 0; p < m && c.implication_holds; ++p)
    for (Point q = 0; q < m && c.implication_holds; ++q)
      if (ctx.prime_open(p).is_subset_of(ctx.prime_open(q)) &&
          !detail::vietoris_equivalent(ctx, c.kfrak.values[p], c.kfrak.values[q])) {
        c.implication_holds = false;
        c.implication_witness = std::pair{p, q};
      }

  auto sg = verify_sigma_gamma(b);
  c.sigma_gamma_adjoint = sg.adjunction.holds;
  c.gamma_sets_were_subspaces = sg.sets_were_subspaces;
  const auto& carrier = a.carrier();
  for (Point cp = 0; cp < carrier.size() && c.intersection_criterion; ++cp) {
    Bitset meet = Bitset::full(m);
    carrier.nbhd(cp).for_each([&](std::size_t v) {
      meet &= detail::u_of(ctx, sigma(b, a.span({a.vector(v)})));
    });
    if (!spec.space.is_closed(meet)) {
      c.intersection_criterion = false;
      c.intersection_witness = cp;
    }
  }

  if (c.open_support_property && c.implication_holds) {
    try {
      c.kernel_identity = Verdict::pass;
      for (const auto& w : ctx.vietoris.space.opens(limits)) {
        const auto lhs = c.kfrak.map.preimage(w);
        const auto rhs = detail::u_of(ctx, CtsMap{x, ctx.vietoris.space, b.kappa}.preimage(w));
        if (lhs != rhs) {
          c.kernel_identity = Verdict::fail;
          break;
        }
      }
    } catch (const CapExceeded&) {
      c.kernel_identity = Verdict::unverified;
    }
  }

  if (c.spectral) {
    try {
      auto mx = max_subspaces(a, limits);
      bool in_max = true;
      for (auto k : b.kappa) in_max = in_max && mx.closed_set.test(k);
      if (in_max) {
        bool constant = true;
        for (Point p = 0; p < x.size(); ++p)
          for (Point q = 0; q < x.size(); ++q)
            if (x.specializes(p, q) && b.kappa[p] != b.kappa[q]) constant = false;
        c.max_kernel_constant = constant;
      }
    } catch (const UnsupportedCarrier&) {
    }
  }

  if (c.open_support_property && c.implication_holds != c.kfrak_continuous)
    throw InternalError("closure implication disagrees with continuity of the spectral kernel");
  if (c.sigma_gamma_adjoint && c.intersection_criterion != c.kfrak_continuous)
    throw InternalError("intersection criterion disagrees with continuity of the spectral kernel");
  if (c.kernel_identity == Verdict::fail) throw InternalError("𝔨⁻¹(W) differs from U_{κ⁻¹(W)}");
  if (c.zero_section_closed && !c.open_support_property)
    throw InternalError("closed zero section without the open support property");
  if (c.open_support_property && c.sob_surjective && !c.spectral)
    throw InternalError("open support property over a base with surjective sob is not spectral");
  if (c.max_kernel_constant == false) throw InternalError("spectral Max-valued kernel varies along specialization");
  return c;
}

struct BundleSections {
  Subspace radical;
  QuotientFiber hat_space;                   // A / radical
  std::vector<std::vector<Point>> sections;  // â per representative
  bool hat_injective = true;
};

inline BundleSections radical_and_sections(const QVBundle& b) {
  const auto& a = b.carrier();
  Subspace rad = a.whole();
  for (auto k : b.kappa) rad = intersect(a.field(), rad, b.sub().subspace(k));
  BundleSections s{rad, quotient_fiber(a, rad), {}, true};
  for (const auto& r : s.hat_space.representatives) s.sections.push_back(section(b, r));
  for (std::size_t i = 0; i < s.sections.size(); ++i)
    for (std::size_t j = i + 1; j < s.sections.size(); ++j)
      if (s.sections[i] == s.sections[j]) s.hat_injective = false;
  if (!s.hat_injective) throw InternalError("distinct classes modulo the radical give equal sections");
  return s;
}

/// A contravariant morphism ℬ -> 𝒜: f♭ : Y -> X on bases and f* : A -> B on
/// carriers, with the fiber map f♯ derived.
struct BundleMorphism {
  QVBundle source;  // ℬ over Y
  QVBundle target;  // 𝒜 over X
  CtsMap flat;      // Y -> X
  FqLinearMap star; // A -> B
  /// sharp[y][i]: image in E_ℬ of the i-th point of the 𝒜-fiber over f♭(y).
  std::vector<std::vector<Point>> sharp;
  Verdict sharp_continuous = Verdict::unverified;
  bool strict = false;
  std::optional<std::pair<Vector, Point>> strict_witness;  // f*(a) ∈ κ_ℬ(y), a ∉ κ_𝒜(f♭ y)
};

namespace detail {

inline Verdict sharp_continuity(const BundleMorphism& f, const Limits& limits) {
  const auto& ea = f.target.total;
  const auto& y = f.source.base();
  if (ea.size() * y.size() > limits.enumeration) return Verdict::unverified;
  auto prod = product(ea, y);
  Bitset keep(prod.size());
  std::vector<Point> table;
  for (Point e = 0; e < ea.size(); ++e)
    for (Point p = 0; p < y.size(); ++p)
      if (f.target.pi[e] == f.flat(p)) {
        keep.set(e * y.size() + p);
        const auto& fib = f.target.fiber[f.flat(p)];
        const auto pos = std::find(fib.begin(), fib.end(), e) - fib.begin();
        table.push_back(f.sharp[p][pos]);
      }
  auto dom = subspace(prod, keep);
  return check_continuous(CtsMap{dom, f.source.total, table}).continuous ? Verdict::pass : Verdict::fail;
}

}  // namespace detail

/// Checks the lax law a ∈ κ_𝒜(f♭ y) ⟹ f*(a) ∈ κ_ℬ(y) and synthesizes
/// f♯(q(a, f♭ y), y) = r(f*(a), y).
inline BundleMorphism check_morphism(const QVBundle& src, const QVBundle& dst, const CtsMap& flat,
                                     const FqLinearMap& star, const Limits& limits = {}) {
  const auto& a = dst.carrier();
  const auto& bsp = src.carrier();
  if (!(flat.source == src.base()) || !(flat.target == dst.base()))
    throw InvalidInput("morphism: base map must go from the source base to the target base");
  if (star.source_dim != a.dim() || star.target_dim != bsp.dim() || star.field.q() != a.q() || a.q() != bsp.q())
    throw InvalidInput("morphism: linear map must go from the target carrier to the source carrier");
  auto cont = check_continuous(flat);
  if (!cont.continuous) throw Rejected("morphism: base map is not continuous", flat.target.names(*cont.witness));

  BundleMorphism f{src, dst, flat, star, {}, Verdict::unverified, true, std::nullopt};
  const auto& y = src.base();
  f.sharp.resize(y.size());
  for (Point p = 0; p < y.size(); ++p) {
    const Point fx = flat(p);
    for (std::size_t v = 0; v < a.vector_count(); ++v) {
      const auto av = a.vector(v);
      const bool in_a = dst.ctx->members[dst.kappa[fx]].test(v);
      const bool in_b = src.ctx->members[src.kappa[p]].test(bsp.index(star.apply(av)));
      if (in_a && !in_b)
        throw Rejected("morphism violates the lax law", {a.format(av), y.id(p)});
      if (in_b && !in_a && f.strict) {
        f.strict = false;
        f.strict_witness = std::pair{av, p};
      }
    }
  }
  for (Point p = 0; p < y.size(); ++p) {
    const Point fx = flat(p);
    const auto& fib = dst.fiber[fx];
    f.sharp[p].assign(fib.size(), src.total.size());
    for (std::size_t v = 0; v < a.vector_count(); ++v) {
      const auto fa = star.apply(a.vector(v));
      const auto e = dst.point(v, fx);
      const auto pos = std::find(fib.begin(), fib.end(), e) - fib.begin();
      const Point image = src.point(bsp.index(fa), p);
      if (f.sharp[p][pos] != src.total.size() && f.sharp[p][pos] != image)
        throw InternalError("f♯ is not well defined");
      f.sharp[p][pos] = image;
    }
  }

  Subspace rad_a = a.whole(), rad_b = bsp.whole();
  for (auto k : dst.kappa) rad_a = intersect(a.field(), rad_a, dst.sub().subspace(k));
  for (auto k : src.kappa) rad_b = intersect(bsp.field(), rad_b, src.sub().subspace(k));
  if (!image(star, rad_a).is_subspace_of(bsp.field(), rad_b))
    throw InternalError("morphism does not map the radical into the radical");
  f.sharp_continuous = detail::sharp_continuity(f, limits);
  return f;
}

inline BundleMorphism identity_morphism(const QVBundle& b) {
  return check_morphism(b, b, CtsMap::identity(b.base()), FqLinearMap::identity(b.carrier().field(), b.carrier().dim()));
}

/// f ∘ g for g: 𝒞 -> ℬ and f: ℬ -> 𝒜; the composite f♯ is checked against
/// (f∘g)♯(e, z) = g♯(f♯(e, g♭ z), z).
inline BundleMorphism compose_morphisms(const BundleMorphism& f, const BundleMorphism& g, const Limits& limits = {}) {
  if (!same_bundle(g.target, f.source)) throw InvalidInput("compose: morphisms are not composable");
  auto h = check_morphism(g.source, f.target, compose(f.flat, g.flat),
                          compose(g.star, f.star), limits);
  const auto& mid = g.target;
  for (Point z = 0; z < h.sharp.size(); ++z)
    for (std::size_t i = 0; i < h.sharp[z].size(); ++i) {
      const Point e_mid = f.sharp[g.flat(z)][i];
      const auto& fib = mid.fiber[g.flat(z)];
      const auto pos = std::find(fib.begin(), fib.end(), e_mid) - fib.begin();
      if (g.sharp[z][pos] != h.sharp[z][i]) throw InternalError("composite f♯ differs from the composition formula");
    }
  return h;
}

inline bool is_iso(const BundleMorphism& f) {
  return is_homeomorphism(f.flat) && f.star.invertible() && f.strict;
}

inline bool same_morphism(const BundleMorphism& f, const BundleMorphism& g) {
  return same_bundle(f.source, g.source) && same_bundle(f.target, g.target) && f.flat.table == g.flat.table &&
         f.star == g.star;
}

/// The section map of f: a section s of 𝒜 goes to y ↦ f♯(s(f♭ y), y).
inline std::vector<Point> map_section(const BundleMorphism& f, const std::vector<Point>& s) {
  std::vector<Point> out(f.source.base().size());
  for (Point y = 0; y < out.size(); ++y) {
    const auto& fib = f.target.fiber[f.flat(y)];
    const auto pos = std::find(fib.begin(), fib.end(), s[f.flat(y)]) - fib.begin();
    out[y] = f.sharp[y][pos];
  }
  return out;
}

/// Checks that the section map sends â to (f* a)^ for every a.
inline bool section_functor_commutes(const BundleMorphism& f) {
  const auto& a = f.target.carrier();
  for (std::size_t v = 0; v < a.vector_count(); ++v)
    if (map_section(f, section(f.target, a.vector(v))) != section(f.source, f.star.apply(a.vector(v)))) return false;
  return true;
}

struct Pullback {
  QVBundle bundle;
  BundleMorphism morphism;  // (f, id_A): f*(𝒜) -> 𝒜
};

inline Pullback pullback(const CtsMap& f, const QVBundle& b, const Limits& limits = {}) {
  if (!(f.target == b.base())) throw InvalidInput("pullback: map does not land in the bundle's base");
  auto cont = check_continuous(f);
  if (!cont.continuous) throw Rejected("pullback: map is not continuous", f.target.names(*cont.witness));
  auto ctx = make_context(f.source, b.carrier(), limits);
  std::vector<Elem> kappa(f.source.size());
  for (Point y = 0; y < kappa.size(); ++y) kappa[y] = ctx->sub().element(b.kernel(f(y)));
  auto pb = build_bundle(ctx, std::move(kappa), limits);
  auto m = check_morphism(pb, b, f, FqLinearMap::identity(b.carrier().field(), b.carrier().dim()), limits);
  if (!m.strict) throw InternalError("pullback morphism is not strict");
  return {std::move(pb), std::move(m)};
}

enum class KernelFilter { continuous, open_support, spectral, sober };

inline const char* to_string(KernelFilter f) {
  switch (f) {
    case KernelFilter::continuous: return "continuous";
    case KernelFilter::open_support: return "open_support";
    case KernelFilter::spectral: return "spectral";
    case KernelFilter::sober: return "sober";
  }
  return "?";
}

inline KernelFilter parse_kernel_filter(const std::string& s) {
  if (s == "continuous") return KernelFilter::continuous;
  if (s == "open_support" || s == "open-support") return KernelFilter::open_support;
  if (s == "spectral") return KernelFilter::spectral;
  if (s == "sober") return KernelFilter::sober;
  throw InvalidInput("unknown filter '" + s + "'");
}

struct KernelCensus {
  std::size_t continuous = 0;
  std::size_t open_support = 0;
  std::size_t spectral = 0;
  std::size_t sober = 0;
  std::size_t total_maps = 0;
  std::vector<std::vector<Elem>> listed;  // kernel maps passing the requested filter
};

/// All maps X -> Sub A in lexicographic order (first point most significant,
/// canonical subspace order), counted per property; those passing `filter`
/// are listed. `visit` sees every continuous kernel map with its bundle and
/// classification.
template <class Visit>
KernelCensus enumerate_kernel_maps(BundleContextPtr ctx, KernelFilter filter, const Limits& limits, Visit&& visit) {
  const auto n = ctx->base.size();
  const auto s = ctx->sub().size();
  KernelCensus census;
  census.total_maps = detail::checked_pow(s, n, limits.enumeration);
  std::vector<Elem> kappa(n, 0);
  for (std::uint64_t code = 0; code < census.total_maps; ++code) {
    auto c = code;
    for (std::size_t i = n; i-- > 0;) {
      kappa[i] = c % s;
      c /= s;
    }
    if (!check_continuous(CtsMap{ctx->base, ctx->vietoris.space, kappa}).continuous) continue;
    ++census.continuous;
    auto b = build_bundle(ctx, kappa, limits);
    auto cls = classify_bundle(b, limits);
    census.open_support += cls.open_support_property;
    census.spectral += cls.spectral;
    census.sober += cls.sober;
    bool pass = filter == KernelFilter::continuous || (filter == KernelFilter::open_support && cls.open_support_property) ||
                (filter == KernelFilter::spectral && cls.spectral) || (filter == KernelFilter::sober && cls.sober);
    if (pass) census.listed.push_back(kappa);
    visit(b, cls);
  }
  return census;
}

inline KernelCensus enumerate_kernel_maps(BundleContextPtr ctx, KernelFilter filter, const Limits& limits = {}) {
  return enumerate_kernel_maps(std::move(ctx), filter, limits, [](const QVBundle&, const BundleClassification&) {});
}

}  // namespace pfk
