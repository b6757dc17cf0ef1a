#include "cli.hpp"

#include "eqcoh/cartan.hpp"
#include "eqcoh/duality.hpp"
#include "eqcoh/euler.hpp"
#include "eqcoh/gysin.hpp"
#include "eqcoh/models.hpp"
#include "eqcoh/smith.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>

namespace eqcoh::cli {

using json = nlohmann::ordered_json;
using Eigen::Index;

namespace {

constexpr Coverage kCoverage[] = {
    {"builtin", "validate"},
    {"load_model", "validate"},
    {"save_model", "validate"},
    {"validate_model", "validate"},
    {"validate_map", "validate"},
    {"cartan_differential", "cohomology"},
    {"cohomology_generic", "cohomology"},
    {"cohomology_hilbert", "cohomology"},
    {"predict_free_hilbert", "cohomology"},
    {"generic_specialized_rank", "cohomology"},
    {"rank_and_solve", "cohomology"},
    {"smith_normal_form", "classify"},
    {"classify_rank1", "classify"},
    {"ext_rank1", "classify"},
    {"is_torsion", "classify"},
    {"integrate", "pairing"},
    {"pairing_matrix", "pairing"},
    {"duality_check", "duality"},
    {"pullback_cohomology", "gysin"},
    {"gysin_localized", "gysin"},
    {"projection_formula_check", "gysin"},
    {"thom_extend", "thom"},
    {"euler_linear", "euler"},
    {"nested_euler_check", "euler"},
    {"localize_integral", "localize"},
    {"localization_consistency", "localize"},
    {"lefschetz_number", "lefschetz"},
    {"restrict_subtorus", "restrict"},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string format = "text";
  int cutoff = -1;
  std::uint64_t seed = kDefaultSeed;
  std::string map;
  std::string class_name;
  std::string form;
  std::string save;
  std::vector<std::string> weights;
  unsigned trivial = 0;
  std::vector<std::string> extra_weights;
  unsigned extra_trivial = 0;
  std::string dims;
  std::vector<std::string> matrices;
  std::string restriction;
  bool to_trivial = false;
};

struct Loaded {
  ModelFile file;
  ModelPtr model;
};

Loaded load(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  Loaded l;
  l.file = select_model(o.model);
  l.model = std::make_shared<const InvariantModel>(l.file.model);
  return l;
}

// ---- value formatting

std::string str(const Polynomial& p, std::size_t n) { return to_string(p, n); }
std::string str(const RationalFunction& q, std::size_t n) { return to_string(q, n); }

json degrees(const std::vector<int>& v) { return json(v); }

template <class M>
json matrix_json(const M& a, std::size_t n) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(str(a(i, j), n));
    rows.push_back(row);
  }
  return rows;
}

json frac_vector_json(const FracVector& v, std::size_t n) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(str(v(i), n));
  return out;
}

bool all_zero(const FracMatrix& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

json report_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& v : r.violations)
    out.push_back(json{{"axiom", v.axiom}, {"generators", v.generators}, {"witness", v.witness}});
  return out;
}

json generic_json(const InvariantModel& m, const GenericCohomology& h) {
  json reps = json::array();
  for (std::size_t i = 0; i < h.representatives.size(); ++i)
    reps.push_back(json{{"degree", h.degrees[i]}, {"cocycle", to_string(m, h.representatives[i])}});
  return json{{"even_rank", h.even_rank}, {"odd_rank", h.odd_rank}, {"representatives", reps}};
}

json classification_json(const ModuleClassification& c) {
  json divisors = json::array();
  for (const auto& p : c.elementary_divisors) divisors.push_back(str(p, 1));
  return json{{"free_rank", c.free_rank},           {"free_degrees", degrees(c.free_degrees)},
              {"elementary_divisors", divisors},    {"torsion_degrees", degrees(c.torsion_degrees)},
              {"is_free", c.is_free},               {"is_torsion_free", c.is_torsion_free},
              {"is_reflexive", c.is_reflexive},     {"is_torsion", c.is_torsion}};
}

LinearRepresentation parse_representation(const std::vector<std::string>& items, unsigned trivial) {
  LinearRepresentation rep;
  rep.trivial_multiplicity = trivial;
  for (const auto& item : items) {
    std::string coeffs = item;
    unsigned mult = 1;
    if (auto colon = item.find(':'); colon != std::string::npos) {
      coeffs = item.substr(0, colon);
      try {
        mult = static_cast<unsigned>(std::stoul(item.substr(colon + 1)));
      } catch (const std::exception&) {
        throw UsageError("bad multiplicity in weight '" + item + "'");
      }
    }
    Weight w;
    std::size_t pos = 0;
    while (pos <= coeffs.size()) {
      auto next = coeffs.find(',', pos);
      if (next == std::string::npos) next = coeffs.size();
      try {
        std::size_t used = 0;
        const std::string part = coeffs.substr(pos, next - pos);
        w.coeffs.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw UsageError("weights are integer vectors like 1,-2 or 1,-2:3; got '" + item + "'");
      }
      pos = next + 1;
    }
    rep.weighted.emplace_back(std::move(w), mult);
  }
  return rep;
}

std::size_t representation_rank(const LinearRepresentation& rep) {
  std::size_t n = 0;
  for (const auto& [w, mult] : rep.weighted) n = std::max(n, w.coeffs.size());
  return n;
}

json representation_json(const LinearRepresentation& rep) {
  json weights = json::array();
  for (const auto& [w, mult] : rep.weighted) weights.push_back(json{{"weight", w.coeffs}, {"multiplicity", mult}});
  return json{{"trivial", rep.trivial_multiplicity}, {"weights", weights}};
}

/// "a,b;c,d" -> rows of rationals.
RationalMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string row = text.substr(pos, end - pos);
    std::vector<Rational> entries;
    std::size_t p = 0;
    while (p <= row.size()) {
      auto e = row.find(',', p);
      if (e == std::string::npos) e = row.size();
      try {
        entries.push_back(parse_rational(row.substr(p, e - p)));
      } catch (const Error&) {
        throw UsageError("bad matrix entry in '" + text + "'");
      }
      p = e + 1;
    }
    rows.push_back(std::move(entries));
    pos = end + 1;
  }
  RationalMatrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw UsageError("ragged matrix '" + text + "'");
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return a;
}

const ModelMap& find_map(const std::vector<ModelMap>& maps, const std::string& name) {
  for (const auto& f : maps)
    if (f.name == name) return f;
  std::string list;
  for (const auto& f : maps) list += (list.empty() ? "" : ", ") + f.name;
  throw UsageError("unknown map '" + name + "'; available: " + list);
}

// ---- subcommands

struct Outcome {
  json body;
  int code = kExitOk;
};

Outcome cmd_validate(const Options& o) {
  const Loaded l = load(o);
  const ValidationReport r = validate_model(*l.model);
  json maps = json::array();
  bool ok = r.ok();
  for (const auto& f : available_maps(l.model, l.file.maps)) {
    const ValidationReport mr = validate_map(f);
    ok = ok && mr.ok();
    maps.push_back(json{{"name", f.name}, {"valid", mr.ok()}, {"violations", report_json(mr)}});
  }
  json body{{"model", l.model->name},
            {"torus_rank", l.model->torus_rank},
            {"generators", l.model->size()},
            {"valid", ok},
            {"violations", report_json(r)},
            {"maps", maps}};
  if (!o.save.empty()) {
    save_model_file(l.file, o.save);
    body["saved"] = o.save;
  }
  return {body, ok ? kExitOk : kExitInvalid};
}

Outcome cmd_cohomology(const Options& o) {
  const Loaded l = load(o);
  const InvariantModel& m = *l.model;
  const int cutoff = o.cutoff >= 0 ? o.cutoff : default_cutoff(m);
  bool nilpotent = true;
  for (std::size_t g = 0; g < m.size(); ++g)
    nilpotent = nilpotent && is_zero_matrix(cartan_differential(m, cartan_differential(m, generator_element(m, g))));
  const FreePrediction free = predict_free_hilbert(m, cutoff);
  const GenericRankCheck check = generic_rank_check(m, o.seed);
  return {json{{"model", m.name},
               {"torus_rank", m.torus_rank},
               {"cutoff", cutoff},
               {"hilbert", free.actual},
               {"generic", generic_json(m, cohomology_generic(m))},
               {"nilpotent", nilpotent},
               {"free_prediction",
                json{{"underlying", free.underlying}, {"predicted", free.predicted}, {"matches", free.matches}}},
               {"rank_check",
                json{{"seed", o.seed},
                     {"exact_total", check.exact_total},
                     {"specialized_total", check.specialized_total},
                     {"draws", check.specialized.draws},
                     {"agree", check.exact_total == check.specialized_total}}}}};
}

Outcome cmd_classify(const Options& o) {
  const Loaded l = load(o);
  const InvariantModel& m = *l.model;
  json body{{"model", m.name}, {"torus_rank", m.torus_rank}, {"is_torsion", is_torsion(m)}};
  if (m.torus_rank != 1) {
    body["classification"] = nullptr;
    body["note"] = "exact module decomposition is available for torus rank 1 only";
    return {body};
  }
  const SmithForm snf = smith_normal_form(cartan_matrix(m));
  json factors = json::array();
  for (const auto& p : snf.invariant_factors) factors.push_back(str(p, 1));
  const ModuleClassification c = classify_rank1(m);
  const int cutoff = o.cutoff >= 0 ? o.cutoff : default_cutoff(m);
  const ExtReport ext = ext_rank1(presentation_of(c));
  json ext1 = json::array();
  for (const auto& p : ext.ext1_divisors) ext1.push_back(str(p, 1));
  body["invariant_factors"] = factors;
  body["classification"] = classification_json(c);
  body["cutoff"] = cutoff;
  body["hilbert"] = c.hilbert(cutoff);
  body["ext"] = json{{"ext0", classification_json(ext.ext0)},
                     {"ext1_divisors", ext1},
                     {"ext1_degrees", degrees(ext.ext1_degrees)}};
  return {body};
}

Outcome cmd_pairing(const Options& o) {
  const Loaded l = load(o);
  const InvariantModel& m = *l.model;
  const GenericCohomology h = cohomology_generic(m);
  json body{{"model", m.name}, {"basis", generic_json(m, h)}, {"pairing", matrix_json(pairing_matrix(m, h), m.torus_rank)}};
  if (!o.class_name.empty()) {
    auto it = m.classes.find(o.class_name);
    if (it == m.classes.end()) throw UsageError("model '" + m.name + "' has no class '" + o.class_name + "'");
    body["class"] = o.class_name;
    body["integral"] = str(integrate(m, it->second), m.torus_rank);
  }
  return {body};
}

Outcome cmd_duality(const Options& o) {
  const Loaded l = load(o);
  const DualityReport d = duality_check(*l.model);
  return {json{{"model", l.model->name},
               {"pairing_rank", d.pairing_rank},
               {"generic_betti_total", d.generic_betti_total},
               {"perfect", d.perfect}}};
}

Outcome cmd_gysin(const Options& o) {
  const Loaded l = load(o);
  if (o.map.empty()) throw UsageError("gysin needs --map NAME");
  const auto maps = available_maps(l.model, l.file.maps);
  const ModelMap& f = find_map(maps, o.map);
  const std::size_t n = l.model->torus_rank;
  json body{{"map", f.name}, {"source", f.source->name}, {"target", f.target->name}};
  if (is_torsion(*f.target)) {
    body["refused"] = true;
    body["reason"] =
        "target cohomology is torsion: the localized Gysin morphism is zero-dimensional, and the "
        "integral Gysin morphism is not determined by the adjunction identity";
    return {body};
  }
  const GysinMatrix x = gysin_localized(f);
  std::size_t zero_samples = 0;
  const auto samples = default_projection_samples(f);
  for (const auto& r : projection_formula_check(f, samples)) zero_samples += all_zero(FracMatrix(r)) ? 1 : 0;
  body["refused"] = false;
  body["degree_shift"] = x.degree_shift;
  body["pullback"] = matrix_json(pullback_cohomology(f), n);
  body["gysin"] = matrix_json(x.matrix, n);
  body["adjunction_residual_zero"] = all_zero(adjunction_residual(f, x));
  body["projection_formula"] = json{{"samples", samples.size()}, {"zero_residuals", zero_samples}};
  return {body};
}

Outcome cmd_thom(const Options& o) {
  const Loaded l = load(o);
  const InvariantModel& m = *l.model;
  std::optional<std::size_t> g;
  if (!o.form.empty()) {
    g = m.index_of(o.form);
    if (!g) throw UsageError("model '" + m.name + "' has no generator '" + o.form + "'");
  } else {
    for (std::size_t i = 0; i < m.size() && !g; ++i)
      if (m.generators[i].degree == m.top_degree && is_zero_matrix(m.d.col(static_cast<Index>(i)))) g = i;
    if (!g) throw UsageError("model '" + m.name + "' has no closed top-degree generator; pass --form");
  }
  RationalVector phi = RationalVector::Zero(static_cast<Index>(m.size()));
  phi(static_cast<Index>(*g)) = 1;
  json body{{"model", m.name}, {"form", m.generators[*g].name}, {"degree", m.generators[*g].degree}};
  try {
    const EquivariantElement ext = thom_extend(m, phi);
    body["extendable"] = true;
    body["extension"] = to_string(m, ext);
    body["cocycle"] = is_zero_matrix(cartan_differential(m, ext));
    const GenericCohomology h = cohomology_generic(m);
    body["generic_coordinates"] = frac_vector_json(generic_coordinates(m, h, ext), m.torus_rank);
  } catch (const ObstructionError& e) {
    body["extendable"] = false;
    body["obstruction_degree"] = e.form_degree();
    body["obstruction"] = e.what();
  }
  return {body};
}

Outcome cmd_euler(const Options& o) {
  json body = json::object();
  if (!o.model.empty()) {
    const Loaded l = load(o);
    json points = json::array();
    for (const auto& p : l.model->fixed_points)
      points.push_back(json{{"name", p.name},
                            {"tangent", representation_json(p.tangent)},
                            {"euler", str(euler_linear(p.tangent), l.model->torus_rank)}});
    body["model"] = l.model->name;
    body["fixed_points"] = points;
  }
  if (!o.weights.empty() || o.trivial > 0) {
    const LinearRepresentation rep = parse_representation(o.weights, o.trivial);
    const std::size_t n = representation_rank(rep);
    rep.validate(n);
    body["representation"] = representation_json(rep);
    body["euler"] = str(euler_linear(rep), n);
    if (!o.extra_weights.empty() || o.extra_trivial > 0) {
      const LinearRepresentation extra = parse_representation(o.extra_weights, o.extra_trivial);
      extra.validate(representation_rank(extra));
      body["extra"] = representation_json(extra);
      body["nested_product_holds"] = nested_euler_check(rep, extra);
    }
  }
  if (body.empty()) throw UsageError("euler needs --model or --weight/--trivial");
  return {body};
}

Outcome cmd_localize(const Options& o) {
  const Loaded l = load(o);
  const InvariantModel& m = *l.model;
  const std::size_t n = m.torus_rank;
  json body{{"model", m.name}};
  if (!o.class_name.empty()) {
    const LocalizedIntegral r = localize_integral(m.fixed_points, o.class_name);
    body["class"] = o.class_name;
    body["value"] = str(r.value, n);
    body["is_polynomial"] = r.is_polynomial;
    return {body};
  }
  const LocalizationReport r = localization_consistency(m);
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"representative", e.representative},
                           {"localized", str(e.localized, n)},
                           {"integrated", str(e.integrated, n)},
                           {"residual", str(e.residual, n)}});
  body["residuals"] = entries;
  body["consistent"] = r.ok();
  return {body};
}

Outcome cmd_lefschetz(const Options& o) {
  std::vector<RationalMatrix> action;
  if (!o.dims.empty()) {
    if (!o.matrices.empty()) throw UsageError("pass either --dims or --matrix");
    std::size_t pos = 0;
    while (pos <= o.dims.size()) {
      auto e = o.dims.find(',', pos);
      if (e == std::string::npos) e = o.dims.size();
      long long k = 0;
      try {
        k = std::stoll(o.dims.substr(pos, e - pos));
      } catch (const std::exception&) {
        throw UsageError("--dims expects comma-separated nonnegative integers");
      }
      if (k < 0) throw UsageError("--dims expects comma-separated nonnegative integers");
      action.push_back(RationalMatrix::Identity(k, k));
      pos = e + 1;
    }
  } else {
    for (const auto& spec : o.matrices) action.push_back(spec == "-" ? RationalMatrix(0, 0) : parse_matrix(spec));
  }
  if (action.empty()) throw UsageError("lefschetz needs --dims or --matrix (one per degree)");
  json traces = json::array();
  for (const auto& a : action) traces.push_back(a.rows());
  return {json{{"degrees", action.size()}, {"dimensions", traces}, {"lefschetz", to_string(lefschetz_number(action))}}};
}

Outcome cmd_restrict(const Options& o) {
  const Loaded l = load(o);
  const InvariantModel& m = *l.model;
  IntMatrix a;
  if (o.to_trivial) {
    if (!o.restriction.empty()) throw UsageError("pass either --matrix or --trivial-group");
    a = IntMatrix(static_cast<Index>(m.torus_rank), 0);
  } else {
    if (o.restriction.empty()) throw UsageError("restrict needs --matrix A (rows u_i, columns v_j) or --trivial-group");
    const RationalMatrix q = parse_matrix(o.restriction);
    a = IntMatrix(q.rows(), q.cols());
    for (Index i = 0; i < q.rows(); ++i)
      for (Index j = 0; j < q.cols(); ++j) {
        if (denominator_of(q(i, j)) != 1) throw UsageError("restriction matrices are integral");
        a(i, j) = static_cast<std::int64_t>(numerator_of(q(i, j)));
      }
  }
  const InvariantModel r = restrict_subtorus(m, a);
  const int cutoff = o.cutoff >= 0 ? o.cutoff : default_cutoff(r);
  json body{{"model", m.name},
            {"restricted_rank", r.torus_rank},
            {"cutoff", cutoff},
            {"hilbert", cohomology_hilbert(r, cutoff)},
            {"generic", generic_json(r, cohomology_generic(r))},
            {"ordinary", ordinary_cohomology(m)}};
  if (!o.map.empty()) {
    const auto maps = available_maps(l.model, l.file.maps);
    const ModelMap& f = find_map(maps, o.map);
    body["map"] = f.name;
    body["gysin_commutes"] = all_zero(restriction_gysin_residual(f, a));
  }
  return {body};
}

// ---- rendering

void render_text(const json& j, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
      if (e.is_structured()) return false;
    return true;
  };
  auto inline_array = [&](const json& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (!v.is_structured()) {
      out << pad << it.key() << ": " << scalar(v) << "\n";
    } else if (flat(v)) {
      out << pad << it.key() << ": " << inline_array(v) << "\n";
    } else if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(v, indent + 2, out);
    } else {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (flat(e)) {
          out << pad << "  " << inline_array(e) << "\n";
        } else if (e.is_object()) {
          out << pad << "  -\n";
          render_text(e, indent + 4, out);
        } else {
          out << pad << "  " << scalar(e) << "\n";
        }
      }
    }
  }
}

void emit(const json& body, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << body.dump(2) << "\n";
  } else {
    render_text(body, 0, out);
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("EQCOH_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeed;
}

}  // namespace

std::span<const Coverage> coverage_registry() { return kCoverage; }

std::vector<std::string> subcommand_names() {
  return {"validate", "cohomology", "classify", "pairing", "duality", "gysin",
          "thom",     "euler",      "localize", "lefschetz", "restrict"};
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  o.seed = default_seed();
  CLI::App app{"Exact torus-equivariant cohomology of finite invariant models", "eqcoh"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::function<Outcome(const Options&)>> handlers{
      {"validate", cmd_validate}, {"cohomology", cmd_cohomology}, {"classify", cmd_classify},
      {"pairing", cmd_pairing},   {"duality", cmd_duality},       {"gysin", cmd_gysin},
      {"thom", cmd_thom},         {"euler", cmd_euler},           {"localize", cmd_localize},
      {"lefschetz", cmd_lefschetz}, {"restrict", cmd_restrict}};
  const std::map<std::string, std::string> descriptions{
      {"validate", "check the model axioms and every map; --save writes the canonical file"},
      {"cohomology", "Hilbert table, generic Betti numbers and representatives"},
      {"classify", "rank-1 module decomposition, Smith invariants and Ext"},
      {"pairing", "equivariant Poincare pairing on the generic basis"},
      {"duality", "is the pairing perfect over the fraction field"},
      {"gysin", "pullback and Gysin matrices of a map, with adjunction and projection checks"},
      {"thom", "equivariant extension of a closed form"},
      {"euler", "Euler classes of fixed points or of a given representation"},
      {"localize", "fixed-point localization of a class, or the consistency report"},
      {"lefschetz", "alternating trace sum of an action on cohomology"},
      {"restrict", "restriction to a subtorus given by an integer matrix"}};

  for (const auto& name : subcommand_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    const bool model_optional = name == "lefschetz" || name == "euler";
    if (name != "lefschetz") {
      auto* opt = sub->add_option("--model", o.model, "builtin:NAME or a model file");
      if (!model_optional) opt->required();
    }
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (name == "cohomology" || name == "classify" || name == "restrict")
      sub->add_option("--cutoff", o.cutoff, "largest degree in Hilbert tables")->check(CLI::NonNegativeNumber);
    if (name == "cohomology") sub->add_option("--seed", o.seed, "seed for the specialized rank check (env EQCOH_SEED)");
    if (name == "gysin" || name == "restrict") sub->add_option("--map", o.map, "map name (id, collapse, incl_<point>, or from the file)");
    if (name == "pairing" || name == "localize") sub->add_option("--class", o.class_name, "named class of the model");
    if (name == "thom") sub->add_option("--form", o.form, "closed generator to extend (default: first closed top-degree one)");
    if (name == "validate") sub->add_option("--save", o.save, "write the model in canonical form to this path");
    if (name == "euler") {
      sub->add_option("--weight", o.weights, "weight a1,...,an[:multiplicity]; repeatable");
      sub->add_option("--trivial", o.trivial, "real multiplicity of the trivial summand");
      sub->add_option("--extra-weight", o.extra_weights, "weights of a second summand for the product check");
      sub->add_option("--extra-trivial", o.extra_trivial, "trivial multiplicity of the second summand");
    }
    if (name == "lefschetz") {
      sub->add_option("--dims", o.dims, "identity action on cohomology of these dimensions, e.g. 1,0,1");
      sub->add_option("--matrix", o.matrices, "action on one degree as rows 'a,b;c,d' ('-' for zero-dimensional); repeat per degree");
    }
    if (name == "restrict") {
      sub->add_option("--matrix", o.restriction, "integer matrix A, rows 'a,b;c,d': u_i -> sum_j A_ij v_j");
      sub->add_flag("--trivial-group", o.to_trivial, "restrict to the trivial group");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  auto fail = [&](const std::string& kind, const std::string& message, int code, json extra = json::object()) {
    if (o.format == "json") {
      json body{{"error", json{{"kind", kind}, {"message", message}}}};
      for (auto it = extra.begin(); it != extra.end(); ++it) body[it.key()] = it.value();
      out << body.dump(2) << "\n";
    } else {
      if (!extra.empty()) render_text(extra, 0, out);
      err << "error: " << message << "\n";
    }
    return code;
  };
  try {
    const Outcome result = handlers.at(name)(o);
    emit(result.body, o, out);
    if (result.code == kExitInvalid && o.format != "json") err << "error: validation failed\n";
    return result.code;
  } catch (const ValidationFailure& e) {
    json report{{"model", o.model}, {"valid", false}, {"line", e.line()}, {"violations", report_json(e.report())}};
    return fail("validation", e.what(), kExitInvalid, report);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const VersionError& e) {
    return fail("version", e.what(), kExitUsage);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kExitUsage);
  } catch (const Error& e) {
    return fail("computation", e.what(), kExitUsage);
  }
}

}  // namespace eqcoh::cli
