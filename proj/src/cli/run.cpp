#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hodgelab/cli.hpp"
#include "hodgelab/clifford.hpp"
#include "hodgelab/descent.hpp"
#include "hodgelab/identities.hpp"

namespace hodgelab {

void RunReport::check(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

bool RunReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Json RunReport::to_json(bool with_timing) const {
  Json out;
  out["version"] = version;
  out["command"] = command;
  out["inputs"] = inputs;
  out["results"] = results;
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back(Json{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  }
  out["checks"] = list;
  if (with_timing) out["timing"] = Json{{"elapsed_ms", elapsed_ms}};
  return out;
}

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::size_t parse_count(const std::string& text, const std::string& what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw UsageError(what + " expects a nonnegative integer, got '" + text + "'");
  }
  return std::stoul(text);
}

QVector parse_vector(const std::string& text) {
  QVector v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(parse_rational(item));
  if (v.empty()) throw UsageError("empty vector");
  return v;
}

QMatrix matrix_field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError("missing field '" + key + "'");
  return matrix_from_json(j.at(key));
}

std::vector<QVector> vectors_field(const Json& j, const std::string& key) {
  std::vector<QVector> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) out.push_back(vector_from_json(v));
  return out;
}

std::vector<MultiTensor> pair_forms(const EStructure& s, const QMatrix& form) {
  return {form_tensor(form), form_tensor(s.J().transpose() * form)};
}

std::vector<MultiTensor> as_tensors(const std::vector<WedgeElement>& ws) {
  std::vector<MultiTensor> out;
  for (const auto& w : ws) out.push_back(wedge_to_tensor(w));
  return out;
}

QMatrix pick_reflection(const QMatrix& gram) {
  const std::size_t n = gram.rows();
  QuadraticSpace space(gram);
  for (std::size_t i = 0; i < n; ++i) {
    QVector v(n, Rational(0));
    v[i] = 1;
    if (!is_zero(space.pair(v, v))) return reflection(gram, v);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QVector v(n, Rational(0));
      v[i] = 1;
      v[j] = 1;
      if (!is_zero(space.pair(v, v))) return reflection(gram, v);
    }
  throw DegenerateError("no anisotropic vector found");
}

Json sparse_to_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back(Json::array({i, to_string(c)}));
  return out;
}

std::string bits(std::uint32_t mask, std::size_t m) {
  std::string s(m, '0');
  for (std::size_t i = 0; i < m; ++i)
    if ((mask >> i) & 1U) s[i] = '1';
  return s;
}

// ---- invariants ----

struct InvariantsArgs {
  std::string group;
  std::string carrier;
  std::string generators;
  std::size_t max_carrier_dim = 3000;
  long expect_dim = -1;
  bool basis = false;
};

void cmd_invariants(const InvariantsArgs& a, RunReport& report, std::ostream& err) {
  report.inputs["group"] = a.group;
  report.inputs["carrier"] = a.carrier;
  if (!a.generators.empty()) report.inputs["generators"] = a.generators;
  report.inputs["max_carrier_dim"] = a.max_carrier_dim;

  GroupSetup setup = parse_group(a.group);
  if (!setup.data.is_null()) report.inputs["group_data"] = setup.data;
  CarrierExpr carrier = parse_carrier(a.carrier);
  const std::size_t n = setup.lie.n;
  auto cdim = carrier_dim(carrier, n, a.max_carrier_dim);
  if (!cdim) {
    throw UsageError("carrier dimension exceeds --max-carrier-dim " + std::to_string(a.max_carrier_dim));
  }
  err << "[invariants] group " << setup.kind << " (dim " << setup.lie.basis.size() << ") on "
      << to_string(carrier) << " (dim " << *cdim << ")\n";

  LieRep rep = make_rep(setup.lie, carrier, setup.extra);
  const auto basis = invariant_basis(rep);
  bool verified = true;
  for (const auto& v : basis) verified = verified && is_invariant(rep, v);

  Json& r = report.results;
  r["group_kind"] = setup.kind;
  r["base_dim"] = n;
  r["lie_dim"] = setup.lie.basis.size();
  r["extra_group_elements"] = setup.extra.size();
  r["carrier"] = to_string(carrier);
  r["carrier_dim"] = *cdim;
  r["carrier_degree"] = carrier_degree(carrier);
  r["invariant_dim"] = basis.size();
  if (a.basis) {
    Json list = Json::array();
    for (const auto& v : basis) list.push_back(sparse_to_json(v));
    r["basis"] = list;
  }
  report.check("invariant_basis_verified", verified, "every basis vector is killed by the Lie basis");
  if (a.expect_dim >= 0) {
    report.check("expected_invariant_dim", basis.size() == static_cast<std::size_t>(a.expect_dim),
                 "expected " + std::to_string(a.expect_dim) + ", got " + std::to_string(basis.size()));
  }

  if (a.generators.empty()) return;
  std::vector<Generator> gens;
  std::stringstream in(a.generators);
  std::string name;
  Json used = Json::array();
  while (std::getline(in, name, ',')) {
    used.push_back(name);
    if (name == "contractions") {
      gens.emplace_back(contraction_tensor(n));
    } else if (name == "forms" || name == "gram") {
      if (setup.forms.empty()) throw UsageError("group " + setup.kind + " has no defining form");
      for (const auto& t : setup.forms) gens.emplace_back(t);
    } else if (name == "exceptional") {
      if (setup.exceptional.empty()) throw UsageError("group " + setup.kind + " has no exceptional classes");
      for (const auto& t : setup.exceptional) gens.emplace_back(t);
    } else if (name == "weil") {
      if (carrier.kind != CarrierExpr::Kind::Wedge) throw UsageError("weil generators need a wedge carrier");
      const CarrierExpr& inner = carrier.children[0];
      const CarrierExpr pair = CarrierExpr::sum({CarrierExpr::std_rep(), CarrierExpr::dual()});
      std::size_t copies = 0;
      if (inner == pair) copies = 1;
      if (inner.kind == CarrierExpr::Kind::Pow && inner.children[0] == pair) copies = inner.k;
      if (copies == 0) throw UsageError("weil generators need wedge(m, pow(sum(std,dual),k))");
      for (auto& w : weil_generators(n, copies)) gens.emplace_back(std::move(w));
    } else {
      throw UsageError("unknown generator family '" + name + "'");
    }
  }
  const CoverageReport cov = generator_coverage(rep, gens);
  r["coverage"] = Json{{"generators", used},
                       {"generator_count", gens.size()},
                       {"products", cov.products},
                       {"invariant_dim", cov.invariant_dim},
                       {"span_dim", cov.span_dim},
                       {"contained", cov.contained},
                       {"equal", cov.equal}};
  err << "[invariants] generator span " << cov.span_dim << " of " << cov.invariant_dim << "\n";
  report.check("generators_are_invariant", cov.contained, "every product lies in the invariant space");
  report.check("generator_span_equals_invariants", cov.equal,
               "span " + std::to_string(cov.span_dim) + " vs invariants " + std::to_string(cov.invariant_dim));
}

// ---- verify ----

SpecializationInput specialization_input(const std::string& path, long n, long c, Json& inputs, Json* raw) {
  if (!path.empty()) {
    Json j = read_json_file(path);
    inputs["input"] = j;
    if (raw) *raw = j;
    SpecializationInput in{space_from_json(j.at("gram")), vectors_field(j, "sub_basis"),
                           vectors_field(j, "complement_basis")};
    return in;
  }
  if (n < 1 || c < 0 || c > n) throw UsageError("need --input FILE or --n N --c C with 0 <= C <= N");
  const auto nn = static_cast<std::size_t>(n);
  const auto cc = static_cast<std::size_t>(c);
  inputs["n"] = nn;
  inputs["c"] = cc;
  std::vector<Rational> ones(nn, Rational(1));
  SpecializationInput in{diagonal_space(ones), {}, {}};
  for (std::size_t i = 0; i < nn; ++i) {
    QVector e(nn, Rational(0));
    e[i] = 1;
    (i < nn - cc ? in.sub_basis : in.complement_basis).push_back(e);
  }
  return in;
}

void cmd_binom(std::size_t n, RunReport& report) {
  report.inputs["n"] = n;
  if (n == 0) throw UsageError("--n must be positive");
  Json values = Json::array();
  for (std::size_t i0 = 1; i0 <= 2 * n - 1; ++i0) {
    const Rational v = binom_unity(n, i0);
    values.push_back(Json{{"i0", i0}, {"value", to_string(v)}});
    report.check("binom_unity(" + std::to_string(n) + "," + std::to_string(i0) + ")", v == 1,
                 "value " + to_string(v));
  }
  report.results["values"] = values;
}

void cmd_sum_identity(std::size_t dim_v, long m, RunReport& report) {
  report.inputs["dimV"] = dim_v;
  std::vector<std::size_t> ms;
  if (m >= 0) {
    report.inputs["m"] = m;
    ms.push_back(static_cast<std::size_t>(m));
  } else {
    for (std::size_t k = 1; k <= dim_v; ++k) ms.push_back(k);
  }
  Json list = Json::array();
  for (std::size_t k : ms) {
    IdentityReport r = verify_sum_identity(dim_v, k);
    list.push_back(r.to_json());
    report.check("sum_identity(dimV=" + std::to_string(dim_v) + ",m=" + std::to_string(k) + ")", r.pass,
                 std::to_string(r.cases) + " basis elements");
  }
  report.results["reports"] = list;
}

void cmd_det_quotient(const std::string& path, long n, long c, RunReport& report) {
  SpecializationInput in = specialization_input(path, n, c, report.inputs, nullptr);
  IdentityReport r = det_quotient_identity(in);
  report.results["report"] = r.to_json();
  report.check("det_quotient_identity", r.pass, "scalar " + to_string(r.scalar));
}

void cmd_specialize(const std::string& path, long n, long c, RunReport& report) {
  Json raw;
  SpecializationInput in = specialization_input(path, n, c, report.inputs, &raw);
  std::vector<QVector> xs = raw.is_object() && raw.contains("x") ? vectors_field(raw, "x") : in.complement_basis;
  SpecializationResult r = specialize_det(in, xs);
  report.results["tensor"] = tensor_to_json(r.tensor);
  report.results["ratio"] = r.ratio ? quad_to_json(*r.ratio) : Json(nullptr);
  report.results["proportional_nonzero"] = r.proportional_nonzero;
  report.check("specialization_recovers_det_T", r.proportional_nonzero,
               r.ratio ? "ratio " + to_string(*r.ratio) : "not proportional to det T");
}

// ---- clifford ----

struct CliffordArgs {
  std::string space;
  bool omega2 = false;
  bool center = false;
  bool ks = false;
  std::string v;
  std::string v0;
};

void cmd_clifford(const CliffordArgs& a, RunReport& report, std::ostream& err) {
  if (!a.omega2 && !a.center && !a.ks) throw UsageError("choose one of --omega2, --center, --ks-embed");
  report.inputs["space"] = read_json_file(a.space);
  QuadraticSpace space = space_from_json(report.inputs["space"]);
  CliffordBuild build = clifford_build(space);
  const CliffordAlgebra& alg = build.algebra;
  Json& r = report.results;
  Json q = Json::array();
  for (const auto& x : alg.qvals()) q.push_back(to_string(x));
  r["qvals"] = q;
  r["basis_change"] = matrix_to_json(build.P);
  r["dim"] = alg.dim();
  r["even_dim"] = alg.even_dim();
  err << "[clifford] n=" << alg.n() << ", dim " << alg.dim() << "\n";

  if (a.omega2) {
    const Rational w2 = omega_squared(alg);
    r["omega_squared"] = to_string(w2);
    const Integer sf = squarefree_part(Integer(w2.get_num() * w2.get_den()));
    r["omega_field_d"] = sf.get_str();
    CliffordElement omega = CliffordElement::blade(static_cast<Blade>(alg.dim() - 1));
    const CliffordElement sq = clifford_mul(omega, omega, alg);
    report.check("omega_squared_is_scalar", sq == CliffordElement::scalar(QuadNumber(w2)), "omega^2 = " + to_string(w2));
  }
  if (a.center) {
    Json full = Json::array();
    for (const auto& z : center(alg, false)) full.push_back(clifford_to_json(z, alg));
    Json even = Json::array();
    const auto ev = center(alg, true);
    for (const auto& z : ev) even.push_back(clifford_to_json(z, alg));
    r["center"] = full;
    r["even_center"] = even;
    r["center_dim"] = full.size();
    r["even_center_dim"] = even.size();
    bool even_ok = std::all_of(ev.begin(), ev.end(), [](const CliffordElement& z) { return z.is_even(); });
    report.check("even_center_is_even", even_ok, "");
  }
  if (a.ks) {
    if (a.v0.empty()) throw UsageError("--ks-embed needs --v0");
    auto pinv = inverse(build.P);
    auto to_orth = [&](const QVector& x) {
      if (x.size() != space.dim()) throw UsageError("vector length does not match the space");
      QVector y(space.dim(), Rational(0));
      for (std::size_t i = 0; i < space.dim(); ++i)
        for (std::size_t j = 0; j < space.dim(); ++j) y[i] += (*pinv)(i, j) * x[j];
      return to_exact(y);
    };
    const ExactVector v0 = to_orth(parse_vector(a.v0));
    report.inputs["v0"] = a.v0;
    std::vector<QVector> images;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      QVector e(space.dim(), Rational(0));
      e[i] = 1;
      const ExactMatrix m = ks_embed(to_orth(e), v0, alg);
      QVector flat;
      for (std::size_t x = 0; x < m.rows(); ++x)
        for (std::size_t y = 0; y < m.cols(); ++y) {
          if (!m(x, y).is_rational()) throw DomainError("unexpected irrational entry");
          flat.push_back(m(x, y).a());
        }
      images.push_back(flat);
    }
    const std::size_t rk = rank(QMatrix::from_rows(images));
    r["ks_image_rank"] = rk;
    report.check("ks_embed_injective", rk == space.dim(), "rank " + std::to_string(rk));
    if (!a.v.empty()) {
      report.inputs["v"] = a.v;
      r["ks_matrix"] = matrix_to_json(ks_embed(to_orth(parse_vector(a.v)), v0, alg));
    }
  }
}

// ---- descend ----

void cmd_descend(const std::string& structure, const std::string& psi_path, bool hermitian, RunReport& report,
                 std::ostream& err) {
  Json sj = read_json_file(structure);
  Json pj = read_json_file(psi_path);
  report.inputs["structure"] = sj;
  report.inputs["psi"] = pj;
  report.inputs["hermitian"] = hermitian;
  EStructure s = structure_from_json(sj);
  const QMatrix psi = pj.is_object() ? matrix_field(pj, "psi") : matrix_from_json(pj);
  EValuedForm phi = trace_descend(psi, s, hermitian);
  Json& r = report.results;
  r["field"] = to_string(s.field());
  r["e_dim"] = s.e_dim();
  r["phi"] = matrix_to_json(phi.gram);
  r["solution_space_dim"] = phi.solution_space_dim;
  bool trace_ok = true;
  const std::size_t n = s.space_dim();
  for (std::size_t i = 0; i < n && trace_ok; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QVector x(n, Rational(0)), y(n, Rational(0));
      x[i] = 1;
      y[j] = 1;
      if (field_trace_norm(phi.evaluate(x, y), s.field()).first != psi(i, j)) {
        trace_ok = false;
        break;
      }
    }
  report.check("trace_recovers_psi", trace_ok, "Tr(phi(e_i, e_j)) = psi(e_i, e_j)");
  report.check("descent_unique", phi.solution_space_dim == 0,
               "homogeneous solution space dim " + std::to_string(phi.solution_space_dim));
  report.check(hermitian ? "phi_hermitian" : "phi_symmetric", hermitian ? phi.is_hermitian() : phi.is_symmetric(), "");
  Json ex = Json::array();
  for (const auto& w : wedge_E_embed(s, psi, hermitian)) ex.push_back(wedge_to_json(w));
  r["exceptional"] = ex;
  err << "[descend] " << to_string(s.field()) << ", E-dimension " << s.e_dim() << "\n";
}

// ---- scenario ----

void cmd_scenario(const std::string& name, RunReport& report, std::ostream& err) {
  long a = 0, b = 0;
  std::int64_t expected = 0;
  std::string description;
  if (name == "paranjape") {
    a = -2;
    b = -2;
    expected = -1;
    description = "U^2 + <-2>^2";
  } else if (name == "ingalls") {
    a = -6;
    b = -2;
    expected = -3;
    description = "U^2 + <-6> + <-2>";
  } else {
    throw UsageError("unknown scenario '" + name + "'");
  }
  report.inputs["scenario"] = name;
  QuadraticSpace lattice = k3_16_lattice(a, b);
  CliffordBuild build = clifford_build(lattice);
  const CliffordAlgebra& alg = build.algebra;
  const Rational w2 = omega_squared(alg);
  const Integer sf = squarefree_part(Integer(w2.get_num() * w2.get_den()));
  const FieldSpec cm = weil_cm_field(a, b);
  const Signature sig = lattice.signature();

  Json& r = report.results;
  r["lattice"] = space_to_json(lattice);
  r["lattice"]["description"] = description;
  r["a"] = a;
  r["b"] = b;
  r["signature"] = Json{{"positive", sig.positive}, {"negative", sig.negative}};
  Json q = Json::array();
  for (const auto& x : alg.qvals()) q.push_back(to_string(x));
  r["clifford"] = Json{{"qvals", q}, {"dim", alg.dim()}, {"even_dim", alg.even_dim()}, {"omega_squared", to_string(w2)}};
  const auto zc = center(alg, true);
  r["even_center_dim"] = zc.size();
  r["cm_field"] = Json{{"d", cm.d}, {"name", to_string(cm)}};
  r["weil_type"] = to_string(cm);

  const CliffordElement omega = CliffordElement::blade(static_cast<Blade>(alg.dim() - 1));
  bool omega_central = true;
  for (Blade s : alg.even_blades()) {
    const CliffordElement x = CliffordElement::blade(s);
    if (!(clifford_mul(omega, x, alg) == clifford_mul(x, omega, alg))) omega_central = false;
  }
  report.check("signature_2_4", sig.positive == 2 && sig.negative == 4,
               "(" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")");
  report.check("omega_squared_equals_-16ab", w2 == Rational(-16 * a * b), "omega^2 = " + to_string(w2));
  report.check("omega_central_in_even_part", omega_central && zc.size() == 2,
               "even center dim " + std::to_string(zc.size()));
  report.check("cm_field_matches_clifford", sf == Integer(static_cast<long>(cm.d)),
               "squarefree(omega^2) = " + sf.get_str());
  report.check("expected_cm_field", cm.d == expected, "d = " + std::to_string(cm.d));
  err << "[scenario] " << name << ": " << description << ", " << to_string(cm) << "-Weil type\n";
}

// ---- galois ----

void cmd_galois(std::size_t m, const std::string& perms_text, long expect_count, RunReport& report) {
  report.inputs["m"] = m;
  report.inputs["perms"] = perms_text;
  std::vector<std::vector<std::size_t>> perms;
  std::stringstream in(perms_text);
  std::string one;
  while (std::getline(in, one, ';')) {
    if (one.empty()) continue;
    std::vector<std::size_t> p;
    std::stringstream items(one);
    std::string item;
    while (std::getline(items, item, ',')) {
      const std::size_t v = parse_count(item, "--perms");
      if (v == 0) throw UsageError("--perms entries are 1-based");
      p.push_back(v - 1);
    }
    perms.push_back(p);
  }
  const auto subs = galois_stable_subgroups(m, perms);
  Json list = Json::array();
  bool ok = true;
  for (const auto& s : subs) {
    Json elems = Json::array();
    for (auto x : s) elems.push_back(bits(x, m));
    Json basis = Json::array();
    const auto bs = f2_basis(s);
    for (auto x : bs) basis.push_back(bits(x, m));
    list.push_back(Json{{"dim", bs.size()}, {"basis", basis}, {"elements", elems}});
    ok = ok && s.size() == (std::size_t{1} << bs.size());
    for (auto x : s) {
      for (auto y : s) ok = ok && std::find(s.begin(), s.end(), x ^ y) != s.end();
      for (const auto& p : perms) {
        std::uint32_t img = 0;
        for (std::size_t i = 0; i < m; ++i)
          if ((x >> i) & 1U) img |= 1U << p[i];
        ok = ok && std::find(s.begin(), s.end(), img) != s.end();
      }
    }
  }
  report.results["count"] = subs.size();
  report.results["subgroups"] = list;
  report.check("subgroups_stable", ok, "closed under addition and the permutations");
  if (expect_count >= 0) {
    report.check("expected_count", subs.size() == static_cast<std::size_t>(expect_count),
                 "expected " + std::to_string(expect_count) + ", got " + std::to_string(subs.size()));
  }
}

}  // namespace

GroupSetup parse_group(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("group must look like KIND:ARG, got '" + text + "'");
  GroupSetup g;
  g.kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (g.kind == "gl" || g.kind == "sl" || g.kind == "sp") {
    const std::size_t n = parse_count(arg, "group size");
    if (n == 0) throw UsageError("group size must be positive");
    if (g.kind == "gl") g.lie = lie_gl(n);
    if (g.kind == "sl") g.lie = lie_sl(n);
    if (g.kind == "sp") {
      g.lie = lie_sp(n);
      g.forms = {form_tensor(standard_symplectic(n))};
    }
    return g;
  }
  Json j = read_json_file(arg);
  g.data = j;
  if (g.kind == "so" || g.kind == "o") {
    QuadraticSpace space = space_from_json(j);
    g.lie = lie_so(space.gram());
    g.forms = {form_tensor(space.gram())};
    if (g.kind == "o") g.extra = {pick_reflection(space.gram())};
    return g;
  }
  if (g.kind == "su" || g.kind == "u" || g.kind == "res-so") {
    EStructure s = structure_from_json(j);
    if (g.kind == "su") {
      const QMatrix H = matrix_field(j, "H");
      g.lie = lie_su(s, H);
      g.forms = pair_forms(s, H);
      if (s.space_dim() % 4 == 0) g.exceptional = as_tensors(weil_classes(s, H));
    } else {
      const QMatrix psi = matrix_field(j, "psi");
      g.lie = g.kind == "u" ? lie_u(s, psi) : lie_res_so(s, psi);
      g.forms = pair_forms(s, psi);
      if (g.kind == "res-so") g.exceptional = as_tensors(wedge_E_embed(s, psi, false));
    }
    return g;
  }
  throw UsageError("unknown group kind '" + g.kind + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multilinear invariant workbench", "hodgelab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_file;
  bool no_timing = false;
  app.add_option("--out", out_file, "Also write the report to FILE");
  app.add_flag("--no-timing", no_timing, "Leave the timing field out of the report");

  InvariantsArgs inv;
  auto* c_inv = app.add_subcommand("invariants", "Invariant space of a group on a carrier");
  c_inv->add_option("--group", inv.group, "gl:N, sl:N, sp:N, so:PATH, o:PATH, su:PATH, u:PATH, res-so:PATH")->required();
  c_inv->add_option("--carrier", inv.carrier, "Carrier expression")->required();
  c_inv->add_option("--generators", inv.generators, "Comma list of contractions, forms, gram, exceptional, weil");
  c_inv->add_option("--max-carrier-dim", inv.max_carrier_dim, "Carrier dimension cap");
  c_inv->add_option("--expect-dim", inv.expect_dim, "Expected invariant dimension");
  c_inv->add_flag("--basis", inv.basis, "Include the invariant basis in the report");

  auto* c_ver = app.add_subcommand("verify", "Exact identity checks");
  c_ver->require_subcommand(1);
  c_ver->fallthrough();
  std::size_t binom_n = 0;
  auto* v_binom = c_ver->add_subcommand("binom", "Alternating binomial sums");
  v_binom->add_option("--n", binom_n, "n")->required();
  std::size_t sum_dimv = 0;
  long sum_m = -1;
  auto* v_sum = c_ver->add_subcommand("sum-identity", "Diagonal pullback identity");
  v_sum->add_option("--dimv", sum_dimv, "dim V")->required();
  v_sum->add_option("--m", sum_m, "Number of copies (default: all m <= dimV)");
  std::string dq_input;
  long dq_n = -1, dq_c = -1;
  auto* v_dq = c_ver->add_subcommand("det-quotient", "Determinant quotient identity");
  v_dq->add_option("--input", dq_input, "JSON with gram, sub_basis, complement_basis");
  v_dq->add_option("--n", dq_n, "Ambient dimension (standard split)");
  v_dq->add_option("--c", dq_c, "Complement dimension (standard split)");
  std::string sp_input;
  long sp_n = -1, sp_c = -1;
  auto* v_sp = c_ver->add_subcommand("specialize", "Iterated contraction of det");
  v_sp->add_option("--input", sp_input, "JSON with gram, sub_basis, complement_basis, optional x");
  v_sp->add_option("--n", sp_n, "Ambient dimension (standard split)");
  v_sp->add_option("--c", sp_c, "Complement dimension (standard split)");

  CliffordArgs cl;
  auto* c_cl = app.add_subcommand("clifford", "Clifford algebra of a quadratic space");
  c_cl->add_option("--space", cl.space, "Gram JSON file")->required();
  c_cl->add_flag("--omega2", cl.omega2, "Square of the volume element");
  c_cl->add_flag("--center", cl.center, "Centers of the algebra and its even part");
  c_cl->add_flag("--ks-embed", cl.ks, "Kuga-Satake map x -> v x v0");
  c_cl->add_option("--v", cl.v, "Vector v (comma separated)");
  c_cl->add_option("--v0", cl.v0, "Vector v0 (comma separated)");

  std::string d_structure, d_psi;
  bool d_herm = false;
  auto* c_desc = app.add_subcommand("descend", "Trace descent of a rational form");
  c_desc->add_option("--structure", d_structure, "JSON with d and J")->required();
  c_desc->add_option("--psi", d_psi, "JSON matrix")->required();
  c_desc->add_flag("--hermitian", d_herm, "Hermitian rather than bilinear descent");

  std::string scenario;
  auto* c_sc = app.add_subcommand("scenario", "Preset K3 lattices");
  c_sc->add_option("name", scenario, "paranjape or ingalls")->required();

  std::size_t g_m = 0;
  std::string g_perms;
  long g_expect = -1;
  auto* c_gal = app.add_subcommand("galois", "Stable subgroups of F_2^m");
  c_gal->add_option("--m", g_m, "m")->required();
  c_gal->add_option("--perms", g_perms, "1-based one-line permutations separated by ';'");
  c_gal->add_option("--expect-count", g_expect, "Expected number of subgroups");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  RunReport report;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (c_inv->parsed()) {
      report.command = "invariants";
      cmd_invariants(inv, report, err);
    } else if (c_ver->parsed()) {
      if (v_binom->parsed()) {
        report.command = "verify binom";
        cmd_binom(binom_n, report);
      } else if (v_sum->parsed()) {
        report.command = "verify sum-identity";
        cmd_sum_identity(sum_dimv, sum_m, report);
      } else if (v_dq->parsed()) {
        report.command = "verify det-quotient";
        cmd_det_quotient(dq_input, dq_n, dq_c, report);
      } else {
        report.command = "verify specialize";
        cmd_specialize(sp_input, sp_n, sp_c, report);
      }
    } else if (c_cl->parsed()) {
      report.command = "clifford";
      cmd_clifford(cl, report, err);
    } else if (c_desc->parsed()) {
      report.command = "descend";
      cmd_descend(d_structure, d_psi, d_herm, report, err);
    } else if (c_sc->parsed()) {
      report.command = "scenario";
      cmd_scenario(scenario, report, err);
    } else {
      report.command = "galois";
      cmd_galois(g_m, g_perms, g_expect, report);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string text = report.to_json(!no_timing).dump(2) + "\n";
  out << text;
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) {
      err << "error: cannot write " << out_file << "\n";
      return 2;
    }
    f << text;
  }
  for (const auto& c : report.checks) err << "[" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace hodgelab
