#pragma once

// Batch front end: one subcommand per run, one JSON report on stdout.
// Exit codes: 0 all verdicts pass, 1 a verdict failed or input was rejected,
// 2 invalid input or usage, 3 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "pfk/io.hpp"

namespace pfk::cli {

struct Options {
  std::string lattice, space, fq, in;
  std::string level, topology = "vietoris", filter = "continuous";
  std::string out, dot;
  std::optional<std::uint64_t> cap;
  bool timing = false;
};

struct Outcome {
  Json report = Json::object();
  Verdict verdict = Verdict::pass;
  std::optional<DotGraph> dot;
};

namespace detail {

inline Json read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SchemaError({path + ": cannot open file"});
  std::stringstream ss;
  ss << f.rdbuf();
  return io::parse_text(ss.str(), std::filesystem::path(path).filename().string());
}

inline const std::string& need(const std::string& value, const std::string& flag) {
  if (value.empty()) throw SchemaError({"missing required option " + flag});
  return value;
}

inline Json names(const FinSpace& x, const Bitset& s) { return x.names(s); }

inline Json check_json(const AxiomCheck& c) {
  Json j;
  j["axiom"] = c.axiom;
  j["verdict"] = to_string(c.verdict);
  j["method"] = c.method;
  j["witness"] = c.witness;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Json matrix_json(const FqLinearMap& m) {
  Json rows = Json::array();
  for (const auto& r : m.matrix) rows.push_back(r);
  return rows;
}

inline Json bundle_json(const QVBundle& b) {
  const auto& x = b.base();
  const auto& a = b.carrier();
  Json j;
  j["base"] = x.ids();
  Json kappa = Json::object();
  for (Point p = 0; p < x.size(); ++p) kappa[x.id(p)] = b.sub().lattice.id(b.kappa[p]);
  j["kappa"] = kappa;
  j["total"] = b.total.ids();
  Json fibers = Json::object();
  for (Point p = 0; p < x.size(); ++p) {
    Json f = Json::array();
    for (auto e : b.fiber[p]) f.push_back(b.total.id(e));
    fibers[x.id(p)] = f;
  }
  j["fibers"] = fibers;
  Json supports = Json::object();
  for (std::size_t v = 0; v < a.vector_count(); ++v) supports[a.format(a.vector(v))] = names(x, b.osupp[v]);
  j["open_supports"] = supports;
  j["addition_continuous"] = to_string(b.addition_continuous);
  j["scalar_continuous"] = to_string(b.scalar_continuous);
  j["zero_section_closed"] = b.zero_section_closed;
  return j;
}

inline Json classification_json(const QVBundle& b, const BundleClassification& c) {
  const auto& ctx = *b.ctx;
  const auto& spec = ctx.spectrum();
  const auto& a = b.carrier();
  auto prime_name = [&](Point i) { return spec.space.id(i); };
  Json j;
  j["open_support_property"] = c.open_support_property;
  Json osp;
  osp["pointwise"] = {{"holds", c.osp_pointwise},
                      {"witness", c.osp_pointwise_witness ? Json(a.format(*c.osp_pointwise_witness)) : Json()}};
  osp["factorization"] = {{"holds", c.osp_factorization},
                          {"witness", c.osp_factorization_witness ? Json(b.base().id(*c.osp_factorization_witness)) : Json()}};
  osp["topology"] = {{"holds", c.osp_topology},
                     {"witness", c.osp_topology_witness ? names(ctx.open_support.space, *c.osp_topology_witness) : Json()}};
  j["open_support_criteria"] = osp;
  Json k = Json::object();
  for (Point i = 0; i < c.kfrak.values.size(); ++i) k[prime_name(i)] = b.sub().lattice.id(c.kfrak.values[i]);
  j["spectral_kernel"] = k;
  j["spectral_kernel_continuous"] = c.kfrak_continuous;
  if (c.kfrak_witness) j["spectral_kernel_witness"] = names(ctx.vietoris.space, *c.kfrak_witness);
  j["spectral"] = c.spectral;
  j["sober"] = c.sober;
  j["base_sober"] = c.base_sober;
  j["zero_section_closed"] = c.zero_section_closed;
  Json imp{{"holds", c.implication_holds}};
  if (c.implication_witness)
    imp["witness"] = {prime_name(c.implication_witness->first), prime_name(c.implication_witness->second)};
  j["closure_implication"] = imp;
  j["sigma_gamma_adjoint"] = c.sigma_gamma_adjoint;
  j["gamma_sets_were_subspaces"] = c.gamma_sets_were_subspaces;
  Json inter{{"holds", c.intersection_criterion}};
  if (c.intersection_witness) inter["witness"] = a.carrier().id(*c.intersection_witness);
  j["intersection_criterion"] = c.sigma_gamma_adjoint ? inter : Json();
  j["kernel_identity"] = to_string(c.kernel_identity);
  j["max_kernel_constant"] = c.max_kernel_constant ? Json(*c.max_kernel_constant) : Json();
  j["radical"] = radical_and_sections(b).radical.key();
  return j;
}

inline Json linloc_json(const LinLocale& l, const Limits& limits) {
  const auto& fl = l.frame.lattice();
  const auto& sl = l.sub().lattice;
  Json j;
  j["frame"] = fl.ids();
  j["carrier"] = {{"q", l.carrier.q()}, {"dim", l.carrier.dim()}, {"topology", l.carrier.carrier_kind()}};
  Json sigma = Json::object();
  for (const auto& [k, v] : l.sigma_ids()) sigma[k] = v;
  j["sigma"] = sigma;
  Json gamma = Json::object();
  for (Elem d = 0; d < fl.size(); ++d) gamma[fl.id(d)] = sl.id(l.gamma(d));
  j["gamma"] = gamma;
  Json k = Json::object();
  for (Point i = 0; i < l.kfrak.size(); ++i) k[fl.id(l.spectrum.primes[i])] = sl.id(l.kfrak[i]);
  j["spectral_kernel"] = k;
  j["spatial"] = spatialization(l.frame, limits).is_spatial;
  try {
    auto m = max_variant_check(l, limits);
    Json mj{{"max_linearized", m.is_max_linearized},
            {"gamma_in_max", m.gamma_in_max},
            {"sigma_closure_invariant", m.sigma_closure_invariant}};
    if (m.witness) mj["witness"] = sl.id(*m.witness);
    if (m.comparable_primes_agree) mj["comparable_primes_agree"] = *m.comparable_primes_agree;
    j["max_variant"] = mj;
  } catch (const UnsupportedCarrier& e) {
    j["max_variant"] = {{"unsupported", e.witness()}};
  }
  return j;
}

inline Json open_name(const OpenLocale& o, Elem e) { return o.space.format(o.open(e)); }

inline io::LoadedLattice load_lattice(const std::string& path, Diagnostics& d) {
  auto doc = read_file(path);
  auto l = io::read_lattice(doc, "$", d);
  d.require();
  return *l;
}

inline FinSpace load_space(const std::string& path, Diagnostics& d, const Limits& limits) {
  auto doc = read_file(path);
  auto s = io::read_space(doc, "$", d, limits);
  d.require();
  return *s;
}

inline FqSpace load_fq(const std::string& path, Diagnostics& d, const Limits& limits) {
  auto doc = read_file(path);
  auto a = io::read_fq(doc, "$", d, limits);
  d.require();
  return *a;
}

inline QVBundle load_bundle(const std::string& path, Diagnostics& d, const Limits& limits) {
  auto doc = read_file(path);
  auto s = io::read_bundle_spec(doc, "$", d, limits);
  d.require();
  return build_bundle(s->base, s->carrier, s->kappa, limits);
}

inline Locale as_frame(const io::LoadedLattice& l, const Limits& limits) {
  return Locale(FinLattice::from_order(l.raw), limits);
}

// --- commands --------------------------------------------------------------

inline Outcome lattice_check(const Options& o, Diagnostics& d, const Limits& limits) {
  auto l = load_lattice(need(o.lattice, "--lattice"), d);
  const auto level = io::parse_level(!o.level.empty() ? o.level : l.level.value_or("suplattice"));
  auto rep = validate_lattice(l.raw, level, limits);
  Outcome out;
  out.report["level"] = to_string(level);
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c));
  out.report["checks"] = checks;
  if (auto f = rep.first_failure()) {
    out.verdict = f->verdict;
    out.report["witness"] = f->witness;
  }
  if (rep.ok() && level != LatticeLevel::poset) out.dot = dot_lattice(FinLattice::from_order(l.raw));
  return out;
}

inline Outcome primes_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto frame = as_frame(load_lattice(need(o.lattice, "--lattice"), d), limits);
  Outcome out;
  Json ps = Json::array(), non = Json::array();
  for (Elem e = 0; e < frame.size(); ++e) {
    auto r = is_prime(frame, e);
    if (r.prime) {
      ps.push_back(frame.id(e));
      continue;
    }
    Json n{{"element", frame.id(e)}};
    if (r.is_top) n["reason"] = "top";
    else n["witness"] = {frame.id(r.witness->first), frame.id(r.witness->second)};
    non.push_back(n);
  }
  out.report["primes"] = ps;
  out.report["non_primes"] = non;
  out.dot = dot_lattice(frame.lattice());
  return out;
}

inline Outcome spectrum_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto frame = as_frame(load_lattice(need(o.lattice, "--lattice"), d), limits);
  auto s = spatialization(frame, limits);
  const auto& sp = s.spectrum.space;
  Outcome out;
  out.report["points"] = sp.ids();
  Json u = Json::object();
  for (Elem a = 0; a < frame.size(); ++a) u[frame.id(a)] = names(sp, s.spectrum.u[a]);
  out.report["u"] = u;
  Json nb = Json::object();
  for (Point p = 0; p < sp.size(); ++p) nb[sp.id(p)] = names(sp, sp.nbhd(p));
  out.report["neighbourhoods"] = nb;
  out.report["opens"] = s.spectral_opens.opens.size();
  out.report["laws"] = "pass";
  out.report["spatial"] = s.is_spatial;
  out.verdict = s.is_spatial ? Verdict::pass : Verdict::fail;
  out.dot = dot_space(sp, "spectrum");
  return out;
}

inline Outcome soberify_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto x = load_space(need(o.space, "--space"), d, limits);
  auto s = soberify(x, limits);
  auto sep = separation_report(x, limits);
  Outcome out;
  out.report["t0"] = sep.t0;
  out.report["t1"] = sep.t1;
  out.report["sober"] = sep.sober;
  Json spec = Json::object();
  for (Point p = 0; p < x.size(); ++p) spec[x.id(p)] = names(x, x.nbhd(p));
  out.report["specialization"] = spec;
  Json sob = Json::object();
  for (Point p = 0; p < x.size(); ++p) sob[x.id(p)] = s.spectrum.space.id(s.sob(p));
  out.report["sob"] = sob;
  out.report["injective"] = s.injective;
  out.report["surjective"] = s.surjective;
  out.report["open_map"] = s.open_map;
  if (sep.sober != sep.t0) throw InternalError("soberness disagrees with T0 on a finite space");
  out.dot = dot_space(x);
  return out;
}

inline Outcome subspaces_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto a = load_fq(need(o.fq, "--fq"), d, limits);
  auto sl = enumerate_subspaces(a, limits);
  Outcome out;
  out.report["q"] = a.q();
  out.report["dim"] = a.dim();
  out.report["count"] = sl.size();
  std::vector<std::size_t> by_dim(a.dim() + 1, 0);
  for (const auto& v : sl.subspaces) ++by_dim[v.dim()];
  out.report["by_dim"] = by_dim;
  out.report["subspaces"] = sl.lattice.ids();
  out.dot = dot_lattice(sl.lattice, "subspaces");
  return out;
}

inline Outcome spec_topology_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto a = load_fq(need(o.fq, "--fq"), d, limits);
  const auto kind = parse_topology_kind(o.topology);
  auto t = spectrum_topology(a, kind, limits);
  const auto& sp = t.space;
  Outcome out;
  out.report["topology"] = to_string(kind);
  out.report["points"] = sp.ids();
  Json nb = Json::object();
  for (Point p = 0; p < sp.size(); ++p) nb[sp.id(p)] = names(sp, sp.nbhd(p));
  out.report["neighbourhoods"] = nb;
  out.report["opens"] = sp.opens(limits).size();
  auto sep = separation_report(sp, limits);
  out.report["t0"] = sep.t0;
  out.report["t1"] = sep.t1;
  if (kind != TopologyKind::vietoris) {
    auto cmp = topology_compare(spectrum_topology(a, TopologyKind::vietoris, limits), t);
    out.report["compared_to_vietoris"] = to_string(cmp.relation);
  }
  auto t1 = max_t1(a, t, limits);
  out.report["max_t1"] = t1 ? Json(*t1) : Json();
  out.dot = dot_space(sp, "spectrum_topology");
  return out;
}

inline Outcome bundle_build_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto b = load_bundle(need(o.in, "--in"), d, limits);
  Outcome out;
  out.report["bundle"] = bundle_json(b);
  out.dot = dot_kernel(b);
  return out;
}

inline Outcome bundle_classify_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto b = load_bundle(need(o.in, "--in"), d, limits);
  Outcome out;
  out.report["kappa"] = bundle_json(b)["kappa"];
  out.report["classification"] = classification_json(b, classify_bundle(b, limits));
  out.dot = dot_kernel(b);
  return out;
}

inline Outcome bundle_enumerate_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto x = load_space(need(o.space, "--space"), d, limits);
  auto a = load_fq(need(o.fq, "--fq"), d, limits);
  const auto filter = parse_kernel_filter(o.filter);
  auto ctx = make_context(x, a, limits);
  std::size_t adjunction_failures = 0;
  auto census = enumerate_kernel_maps(ctx, filter, limits, [&](const QVBundle&, const BundleClassification& c) {
    adjunction_failures += !c.sigma_gamma_adjoint;
  });
  Outcome out;
  out.report["filter"] = to_string(filter);
  out.report["count"] = census.listed.size();
  out.report["census"] = {{"maps", census.total_maps},       {"continuous", census.continuous},
                          {"open_support", census.open_support}, {"spectral", census.spectral},
                          {"sober", census.sober},           {"sigma_gamma_not_adjoint", adjunction_failures}};
  Json ks = Json::array();
  for (const auto& k : census.listed) {
    Json m = Json::object();
    for (Point p = 0; p < x.size(); ++p) m[x.id(p)] = ctx->sub().lattice.id(k[p]);
    ks.push_back(m);
  }
  out.report["kernels"] = ks;
  return out;
}

inline Outcome morphism_check_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto doc = read_file(need(o.in, "--in"));
  std::optional<io::BundleSpec> src, dst;
  if (auto s = io::detail::member(doc, "source", "$", d)) src = io::read_bundle_spec(*s, "$.source", d, limits);
  if (auto s = io::detail::member(doc, "target", "$", d)) dst = io::read_bundle_spec(*s, "$.target", d, limits);
  std::optional<CtsMap> flat;
  std::optional<FqLinearMap> star;
  if (src && dst) {
    if (auto f = io::detail::member(doc, "f_flat", "$", d)) flat = io::read_point_map(src->base, dst->base, *f, "$.f_flat", d);
    if (auto f = io::detail::member(doc, "f_star", "$", d))
      star = io::read_matrix(dst->carrier.field(), dst->carrier.dim(), src->carrier.dim(), *f, "$.f_star", d);
  }
  d.require();
  auto b = build_bundle(src->base, src->carrier, src->kappa, limits);
  auto a = build_bundle(dst->base, dst->carrier, dst->kappa, limits);
  auto m = check_morphism(b, a, *flat, *star, limits);
  Outcome out;
  out.report["lax"] = true;
  out.report["strict"] = m.strict;
  if (m.strict_witness)
    out.report["strict_witness"] = {a.carrier().format(m.strict_witness->first), b.base().id(m.strict_witness->second)};
  Json sharp = Json::object();
  for (Point y = 0; y < b.base().size(); ++y) {
    Json row = Json::object();
    const auto& fib = a.fiber[flat->table[y]];
    for (std::size_t i = 0; i < fib.size(); ++i) row[a.total.id(fib[i])] = b.total.id(m.sharp[y][i]);
    sharp[b.base().id(y)] = row;
  }
  out.report["sharp"] = sharp;
  out.report["sharp_continuous"] = to_string(m.sharp_continuous);
  out.report["sections_commute"] = section_functor_commutes(m);
  out.report["iso"] = is_iso(m);
  if (m.sharp_continuous == Verdict::fail || !section_functor_commutes(m)) out.verdict = Verdict::fail;
  return out;
}

inline LinLocale load_linloc(const Json& doc, const std::string& path, Diagnostics& d, const Limits& limits) {
  auto l = io::read_linloc(doc, path, d, limits);
  d.require();
  return *l;
}

inline Outcome linloc_check_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto l = load_linloc(read_file(need(o.in, "--in")), "$", d, limits);
  Outcome out;
  out.report["linearized_locale"] = linloc_json(l, limits);
  out.report["valid"] = true;
  return out;
}

inline Outcome spec_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto l = load_linloc(read_file(need(o.in, "--in")), "$", d, limits);
  auto b = spec_bundle(l, limits);
  Outcome out;
  out.report["bundle"] = bundle_json(b);
  auto c = classify_bundle(b, limits);
  out.report["spectral"] = c.spectral;
  out.report["sober"] = c.sober;
  out.dot = dot_kernel(b, "spec");
  return out;
}

inline Outcome omega_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto b = load_bundle(need(o.in, "--in"), d, limits);
  auto l = omega_linloc(b, limits);
  Outcome out;
  out.report["linearized_locale"] = linloc_json(l, limits);
  return out;
}

inline Outcome transpose_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto doc = read_file(need(o.in, "--in"));
  std::optional<io::BundleSpec> bs;
  std::optional<LinLocale> l;
  if (auto s = io::detail::member(doc, "bundle", "$", d)) bs = io::read_bundle_spec(*s, "$.bundle", d, limits);
  if (auto s = io::detail::member(doc, "linloc", "$", d)) l = io::read_linloc(*s, "$.linloc", d, limits);
  std::optional<CtsMap> flat;
  std::optional<FqLinearMap> star;
  std::optional<QVBundle> spec;
  if (bs && l) {
    spec = spec_bundle(*l, limits);
    if (auto f = io::detail::member(doc, "f_flat", "$", d)) flat = io::read_point_map(bs->base, spec->base(), *f, "$.f_flat", d);
    if (auto f = io::detail::member(doc, "f_star", "$", d))
      star = io::read_matrix(l->carrier.field(), l->carrier.dim(), bs->carrier.dim(), *f, "$.f_star", d);
  }
  d.require();
  auto b = build_bundle(bs->base, bs->carrier, bs->kappa, limits);
  auto f = check_morphism(b, *spec, *flat, *star, limits);
  auto t = adjunction_transpose(f, *l, limits);
  Outcome out;
  const auto& opens = b.ctx->opens();
  Json under = Json::object();
  const auto& inv = t.morphism.underline.inverse_image;
  for (Elem e = 0; e < l->frame.size(); ++e) under[l->frame.id(e)] = open_name(opens, inv(e));
  out.report["inverse_image"] = under;
  out.report["linear_part"] = matrix_json(t.morphism.overline);
  out.report["strict"] = t.morphism.strict;
  out.report["bundle_morphism_strict"] = f.strict;
  out.report["round_trip"] = t.round_trip;
  out.report["certificate"] = to_string(t.certificate);
  out.report["candidates"] = t.candidates;
  if (t.certificate == Certificate::not_unique || !t.round_trip) out.verdict = Verdict::fail;
  else if (t.certificate == Certificate::unverified) out.verdict = Verdict::unverified;
  return out;
}

inline Outcome adjunction_census_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  auto doc = read_file(need(o.in, "--in"));
  std::optional<io::BundleSpec> bs;
  std::optional<LinLocale> l;
  if (auto s = io::detail::member(doc, "bundle", "$", d)) bs = io::read_bundle_spec(*s, "$.bundle", d, limits);
  if (auto s = io::detail::member(doc, "linloc", "$", d)) l = io::read_linloc(*s, "$.linloc", d, limits);
  d.require();
  auto b = build_bundle(bs->base, bs->carrier, bs->kappa, limits);
  auto h = hom_set_census(b, *l, limits);
  const bool tri_spec = triangle_spec_side(*l, limits);
  const bool tri_omega = triangle_omega_side(b, limits);
  auto u = unit_sob(b, limits);
  auto c = counit_spat(*l, limits);
  Outcome out;
  out.report["hom_sets"] = {{"bundle_morphisms", h.bundle_homs},
                            {"linearized_locale_morphisms", h.ll_homs},
                            {"strict_bundle_morphisms", h.strict_bundle_homs},
                            {"strict_linearized_locale_morphisms", h.strict_ll_homs},
                            {"bijective", h.bijective},
                            {"strict_bijective", h.strict_bijective}};
  out.report["triangles"] = {{"spec_side", tri_spec}, {"omega_side", tri_omega}};
  out.report["unit"] = {{"iso", u.iso}, {"sober", classify_bundle(b, limits).sober}};
  out.report["counit"] = {{"iso", c.iso}, {"spatial", spatialization(l->frame, limits).is_spatial}};
  const bool ok = h.bijective && h.strict_bijective && tri_spec && tri_omega;
  out.verdict = ok ? Verdict::pass : Verdict::fail;
  return out;
}

inline Outcome dot_cmd(const Options& o, Diagnostics& d, const Limits& limits) {
  Outcome out;
  std::string kind;
  DotGraph g;
  if (!o.lattice.empty()) {
    kind = "lattice";
    g = dot_lattice(FinLattice::from_order(load_lattice(o.lattice, d).raw));
  } else if (!o.space.empty()) {
    kind = "space";
    g = dot_space(load_space(o.space, d, limits));
  } else if (!o.fq.empty()) {
    kind = "subspaces";
    g = dot_lattice(enumerate_subspaces(load_fq(o.fq, d, limits), limits).lattice, "subspaces");
  } else if (!o.in.empty()) {
    kind = "kernel";
    g = dot_kernel(load_bundle(o.in, d, limits));
  } else {
    throw SchemaError({"dot needs one of --lattice, --space, --fq, --in"});
  }
  out.report["kind"] = kind;
  out.report["nodes"] = g.nodes;
  out.report["edges"] = g.edges;
  out.report["dot"] = g.text;
  out.dot = g;
  return out;
}

using Command = std::function<Outcome(const Options&, Diagnostics&, const Limits&)>;

struct CommandInfo {
  std::string name;
  std::string help;
  Command fn;
};

inline const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table{
      {"lattice-check", "validate a poset, suplattice or frame", lattice_check},
      {"primes", "prime elements of a frame", primes_cmd},
      {"spectrum", "prime spectrum and spatialization of a frame", spectrum_cmd},
      {"soberify", "separation axioms and soberification of a space", soberify_cmd},
      {"subspaces", "subspace lattice of F_q^n", subspaces_cmd},
      {"spec-topology", "topology on the subspace lattice", spec_topology_cmd},
      {"bundle-build", "quotient vector bundle from a kernel map", bundle_build_cmd},
      {"bundle-classify", "open support, spectral and sober classification", bundle_classify_cmd},
      {"bundle-enumerate", "census of kernel maps over a space and carrier", bundle_enumerate_cmd},
      {"morphism-check", "check a bundle morphism and build its fibre map", morphism_check_cmd},
      {"linloc-check", "validate a linearized locale", linloc_check_cmd},
      {"spec", "bundle of a linearized locale", spec_cmd},
      {"omega", "linearized locale of a spectral bundle", omega_cmd},
      {"transpose", "adjoint transpose of a morphism into Spec", transpose_cmd},
      {"adjunction-census", "hom-set bijection, triangles, unit and counit", adjunction_census_cmd},
      {"dot", "Graphviz export of a lattice, space, subspace lattice or kernel", dot_cmd},
  };
  return table;
}

inline Json args_echo(const Options& o) {
  Json a = Json::object();
  auto file = [&](const char* k, const std::string& v) {
    if (!v.empty()) a[k] = std::filesystem::path(v).filename().string();
  };
  file("lattice", o.lattice);
  file("space", o.space);
  file("fq", o.fq);
  file("in", o.in);
  if (!o.level.empty()) a["level"] = o.level;
  if (o.topology != "vietoris") a["topology"] = o.topology;
  if (o.filter != "continuous") a["filter"] = o.filter;
  if (o.cap) a["cap"] = *o.cap;
  return a;
}

inline Limits limits_for(const Options& o) {
  Limits l;
  if (const char* env = std::getenv("PFK_CAP")) {
    try {
      l.enumeration = std::stoull(env);
    } catch (const std::exception&) {
      throw SchemaError({"PFK_CAP: expected a non-negative integer, got '" + std::string(env) + "'"});
    }
  }
  if (o.cap) l.enumeration = *o.cap;
  return l;
}

}  // namespace detail

/// Runs one subcommand; the report goes to `out` (or to --out), usage and
/// parse errors to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite frames, spectra, quotient vector bundles and linearized locales"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help, _] : detail::commands()) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--lattice", o.lattice, "lattice JSON");
    s->add_option("--space", o.space, "space JSON");
    s->add_option("--fq", o.fq, "carrier JSON");
    s->add_option("--in", o.in, "input JSON (bundle, morphism, linearized locale, ...)");
    s->add_option("--level", o.level, "poset | suplattice | frame");
    s->add_option("--topology", o.topology, "vietoris | open-support | fell");
    s->add_option("--filter", o.filter, "continuous | open-support | spectral | sober");
    s->add_option("--out", o.out, "write the report here instead of stdout");
    s->add_option("--dot", o.dot, "also write a DOT diagram of the main object");
    s->add_option("--cap", o.cap, "enumeration cap (overrides PFK_CAP)");
    s->add_flag("--timing", o.timing, "add wall-clock timing to the report");
    subs[name] = s;
  }
  if (argc > 1 && argv[1][0] != '-') {
    const std::string first = argv[1];
    bool known = false;
    for (const auto& c : detail::commands()) known = known || c.name == first;
    if (!known) {
      err << app.help();
      Json r{{"status", "invalid_input"}, {"errors", {"unknown command '" + first + "'"}}};
      out << r.dump(2) << "\n";
      return 2;
    }
  }
  std::string command;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << app.help();
    Json r{{"status", "invalid_input"}, {"errors", {e.what()}}};
    out << r.dump(2) << "\n";
    return 2;
  }
  for (const auto& [name, s] : subs)
    if (s->parsed()) command = name;

  Json report;
  report["command"] = command;
  report["args"] = detail::args_echo(o);
  Diagnostics diag;
  int code = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto limits = detail::limits_for(o);
    detail::Command run_cmd;
    for (const auto& c : detail::commands())
      if (c.name == command) run_cmd = c.fn;
    auto outcome = run_cmd(o, diag, limits);
    if (!diag.notes.empty()) report["notes"] = diag.notes;
    report["status"] = "ok";
    report["verdict"] = to_string(outcome.verdict);
    for (auto it = outcome.report.begin(); it != outcome.report.end(); ++it) report[it.key()] = it.value();
    code = outcome.verdict == Verdict::fail ? 1 : 0;
    if (!o.dot.empty() && outcome.dot) {
      std::ofstream f(o.dot);
      f << outcome.dot->text;
    }
  } catch (const SchemaError& e) {
    report["status"] = "invalid_input";
    report["errors"] = e.errors();
    code = 2;
  } catch (const InvalidInput& e) {
    report["status"] = "invalid_input";
    report["errors"] = {e.what()};
    code = 2;
  } catch (const Rejected& e) {
    if (!diag.notes.empty()) report["notes"] = diag.notes;
    report["status"] = "rejected";
    report["verdict"] = "fail";
    report["message"] = e.what();
    report["witness"] = e.witness();
    code = 1;
  } catch (const CapExceeded& e) {
    report["status"] = "cap_exceeded";
    report["verdict"] = "unverified";
    report["message"] = e.what();
    code = 1;
  } catch (const InternalError& e) {
    report["status"] = "internal_error";
    report["message"] = e.what();
    code = 3;
  }
  if (o.timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const auto text = report.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace pfk::cli
