#include "eqcoh/models.hpp"

#include "eqcoh/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace eqcoh {

using Eigen::Index;
using json = nlohmann::ordered_json;

namespace {

struct Builder {
  InvariantModel m;

  Builder(std::string name, std::size_t rank, std::vector<Generator> gens) {
    m.name = std::move(name);
    m.torus_rank = rank;
    m.generators = std::move(gens);
    const Index n = static_cast<Index>(m.size());
    m.d = RationalMatrix::Zero(n, n);
    m.contractions.assign(rank, RationalMatrix::Zero(n, n));
  }
  Index at(std::string_view g) const { return static_cast<Index>(*m.index_of(g)); }
  RationalVector unit(std::string_view g) const {
    RationalVector v = RationalVector::Zero(static_cast<Index>(m.size()));
    v(at(g)) = 1;
    return v;
  }
  /// d(from) gains `value` times `to`.
  void d(std::string_view from, std::string_view to, Rational value) { m.d(at(to), at(from)) = value; }
  void c(std::size_t i, std::string_view from, std::string_view to, Rational value) {
    m.contractions[i](at(to), at(from)) = value;
  }
  void product(std::string_view a, std::string_view b, std::string_view result) {
    m.products[{static_cast<std::size_t>(at(a)), static_cast<std::size_t>(at(b))}] = unit(result);
  }
  void zero_product(std::string_view a, std::string_view b) {
    m.products[{static_cast<std::size_t>(at(a)), static_cast<std::size_t>(at(b))}] =
        RationalVector::Zero(static_cast<Index>(m.size()));
  }
  void unit_products(std::string_view one) {
    for (const auto& g : m.generators) product(one, g.name, g.name);
  }
  void constant_class(std::string name, std::string_view g) { m.classes[std::move(name)] = unit(g).cast<Polynomial>(); }
};

std::vector<Generator> circle_generators() { return {{"b0", 0}, {"b1", 1}}; }

Builder circle_builder(std::string name, std::size_t rank) {
  Builder b(std::move(name), rank, circle_generators());
  b.unit_products("b0");
  b.zero_product("b1", "b1");
  b.m.top_degree = 1;
  b.m.integration[1] = 1;
  b.m.compact = true;
  b.constant_class("one", "b0");
  return b;
}

}  // namespace

// The invariant forms of a point are the constants; with any torus acting trivially the
// Cartan complex is S(t) in even degrees. The point is its own fixed point, tangent space 0.
InvariantModel point(std::size_t n) {
  Builder b("point(" + std::to_string(n) + ")", n, {{"1", 0}});
  b.unit_products("1");
  b.m.top_degree = 0;
  b.m.integration[0] = 1;
  b.m.compact = true;
  b.constant_class("one", "1");
  FixedPointDatum p;
  p.name = "p";
  p.evaluation = b.unit("1");
  p.restrictions["one"] = Polynomial(1);
  b.m.fixed_points.push_back(std::move(p));
  return b.m;
}

// Trivial action: invariant forms are all forms, and the harmonic ones 1 and dθ/2π
// already compute H(S¹). The generating vector field is zero, so every c_i vanishes.
InvariantModel circle_trivial(std::size_t n) {
  return circle_builder("circle_trivial(" + std::to_string(n) + ")", n).m;
}

// Free rotation: the invariant forms reduce to span{1, dθ/2π}, and the generating field
// ∂/∂θ contracts dθ/2π to the constant 1/2π; rescaling b1 makes that c(b1) = b0.
InvariantModel circle_free() {
  Builder b = circle_builder("circle_free", 1);
  b.c(0, "b1", "b0", 1);
  return b.m;
}

// T² acting on S¹ through its second factor: the first circle's field is zero, the
// second one is the free rotation above.
InvariantModel rema_adj() {
  Builder b = circle_builder("rema_adj", 2);
  b.c(1, "b1", "b0", 1);
  return b.m;
}

// The free-rotation complex with the compactness (and hence integration) dropped: the
// cocycle a has c(a) = b, a nonzero closed function, so a admits no equivariant extension.
InvariantModel obstruction_pair() {
  Builder b("obstruction_pair", 1, {{"a", 1}, {"b", 0}});
  b.unit_products("b");
  b.zero_product("a", "a");
  b.c(0, "a", "b", 1);
  b.m.top_degree = 1;
  b.m.compact = false;
  b.constant_class("one", "b");
  return b.m;
}

// Invariant forms of S² ⊂ R³ under rotation about the t-axis, t the height. Generated by
// functions 1, t, t², one-forms dt, t dt, the moment one-form omega = t dθ-type form with
// d omega = -2 t vol, and two-forms vol, t vol, normalized so ∫vol = 2 and ∫t vol = 0.
// The generating field X contracts vol to -dt (t is its Hamiltonian) and omega to 1 - t².
// For the character alpha every c_i is alpha_i times that contraction; the poles t = ±1
// are the fixed points, with tangent weights alpha and -alpha.
InvariantModel c_alpha(const std::vector<std::int64_t>& alpha) {
  if (alpha.empty() || std::all_of(alpha.begin(), alpha.end(), [](auto a) { return a == 0; }))
    throw DataError("c_alpha needs a nonzero character");
  std::string name = "c_alpha(";
  for (std::size_t i = 0; i < alpha.size(); ++i) name += (i ? "," : "") + std::to_string(alpha[i]);
  name += ")";
  Builder b(name, alpha.size(),
            {{"1", 0}, {"t", 0}, {"t2", 0}, {"dt", 1}, {"tdt", 1}, {"vol", 2}, {"tvol", 2}, {"omega", 1}});
  b.d("t", "dt", 1);
  b.d("t2", "tdt", 2);
  b.d("omega", "tvol", -2);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Rational a(alpha[i]);
    b.c(i, "vol", "dt", -a);
    b.c(i, "tvol", "tdt", -a);
    b.c(i, "omega", "1", a);
    b.c(i, "omega", "t2", -a);
  }
  b.unit_products("1");
  b.product("t", "t", "t2");
  b.product("t", "dt", "tdt");
  b.product("t", "vol", "tvol");
  b.zero_product("dt", "dt");
  b.m.top_degree = 2;
  b.m.integration[static_cast<std::size_t>(b.at("vol"))] = 2;
  b.m.integration[static_cast<std::size_t>(b.at("tvol"))] = 0;
  b.m.compact = true;

  Weight w{alpha};
  Weight minus_w{alpha};
  for (auto& a : minus_w.coeffs) a = -a;
  const Polynomial form = w.form();
  b.constant_class("one", "1");
  PolyVector wc = b.unit("vol").cast<Polynomial>();
  wc(b.at("t")) = form;
  b.m.classes["w"] = wc;

  auto pole = [&](std::string pname, const Weight& weight, int t) {
    FixedPointDatum p;
    p.name = std::move(pname);
    p.tangent.weighted.emplace_back(weight, 1);
    RationalVector e = RationalVector::Zero(static_cast<Index>(b.m.size()));
    e(b.at("1")) = 1;
    e(b.at("t")) = t;
    e(b.at("t2")) = 1;
    p.evaluation = e;
    p.restrictions["one"] = Polynomial(1);
    p.restrictions["w"] = form * Rational(t);
    return p;
  };
  b.m.fixed_points.push_back(pole("N", w, 1));
  b.m.fixed_points.push_back(pole("S", minus_w, -1));
  return b.m;
}

// c_alpha for the standard character of the circle.
InvariantModel s2_rotation() {
  InvariantModel m = c_alpha({1});
  m.name = "s2_rotation";
  return m;
}

std::vector<std::string> builtin_names() {
  return {"point(n)", "circle_trivial(n)", "circle_free", "rema_adj", "s2_rotation", "obstruction_pair",
          "c_alpha(a1,...,an)"};
}

namespace {

std::vector<std::int64_t> parse_int_list(std::string_view args, std::string_view name) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= args.size()) {
    std::size_t next = args.find(',', pos);
    if (next == std::string_view::npos) next = args.size();
    std::string_view item = args.substr(pos, next - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size())
      throw DataError("bad integer argument '" + std::string(item) + "' in builtin '" + std::string(name) + "'");
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

std::size_t single_rank(const std::vector<std::int64_t>& args, std::string_view name) {
  if (args.size() != 1 || args[0] < 0)
    throw DataError("builtin '" + std::string(name) + "' takes one nonnegative torus rank");
  return static_cast<std::size_t>(args[0]);
}

}  // namespace

InvariantModel builtin(std::string_view name) {
  std::string_view base = name;
  std::optional<std::vector<std::int64_t>> args;
  if (auto open = name.find('('); open != std::string_view::npos) {
    if (name.back() != ')') throw DataError("malformed builtin name '" + std::string(name) + "'");
    base = name.substr(0, open);
    args = parse_int_list(name.substr(open + 1, name.size() - open - 2), name);
  }
  if (base == "point") return point(args ? single_rank(*args, name) : 1);
  if (base == "circle_trivial") return circle_trivial(args ? single_rank(*args, name) : 1);
  if (base == "c_alpha") {
    if (!args) throw DataError("c_alpha needs weights, e.g. c_alpha(1,2)");
    return c_alpha(*args);
  }
  if (!args) {
    if (base == "circle_free") return circle_free();
    if (base == "rema_adj") return rema_adj();
    if (base == "s2_rotation") return s2_rotation();
    if (base == "obstruction_pair") return obstruction_pair();
  }
  std::string list;
  for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
  throw DataError("unknown builtin '" + std::string(name) + "'; available: " + list);
}

bool MapEntry::operator==(const MapEntry& o) const {
  return name == o.name && source == o.source && target == o.target && same_matrix(pullback, o.pullback) &&
         proper == o.proper;
}

// ---------------------------------------------------------------------------------------
// Serialization

namespace {

json triplets(const RationalMatrix& a) {
  json out = json::array();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out.push_back(json::array({i, j, to_string(a(i, j))}));
  return out;
}

json sparse(const RationalVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) out.push_back(json::array({i, to_string(v(i))}));
  return out;
}

json encode_representation(const LinearRepresentation& rep) {
  json weights = json::array();
  for (const auto& [w, mult] : rep.weighted) weights.push_back(json::array({w.coeffs, mult}));
  return json{{"trivial", rep.trivial_multiplicity}, {"weights", weights}};
}

json encode(const InvariantModel& m) {
  const std::size_t n = m.torus_rank;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = m.name;
  j["torus_rank"] = m.torus_rank;
  json gens = json::array();
  for (const auto& g : m.generators) gens.push_back(json{{"name", g.name}, {"degree", g.degree}});
  j["generators"] = gens;
  j["d"] = triplets(m.d);
  json cs = json::array();
  for (const auto& c : m.contractions) cs.push_back(triplets(c));
  j["contractions"] = cs;
  json prods = json::array();
  for (const auto& [key, v] : m.products)
    prods.push_back(json{{"left", key.first}, {"right", key.second}, {"value", sparse(v)}});
  j["products"] = prods;
  j["top_degree"] = m.top_degree;
  json integ = json::array();
  for (const auto& [g, v] : m.integration) integ.push_back(json::array({g, to_string(v)}));
  j["integration"] = integ;
  j["compact"] = m.compact;
  json classes = json::object();
  for (const auto& [name, x] : m.classes) {
    json terms = json::array();
    for (Index i = 0; i < x.size(); ++i)
      if (!x(i).is_zero()) terms.push_back(json::array({i, to_string(x(i), n)}));
    classes[name] = terms;
  }
  j["classes"] = classes;
  json points = json::array();
  for (const auto& p : m.fixed_points) {
    json jp;
    jp["name"] = p.name;
    jp["tangent"] = encode_representation(p.tangent);
    json r = json::object();
    for (const auto& [cls, value] : p.restrictions) r[cls] = to_string(value, n);
    jp["restrictions"] = r;
    if (p.evaluation) jp["evaluation"] = sparse(*p.evaluation);
    points.push_back(jp);
  }
  j["fixed_points"] = points;
  return j;
}

/// Pretty printer: containers that fit on one line stay on one line.
void emit(const json& j, int indent, std::string& out) {
  constexpr std::size_t kWidth = 100;
  const std::string flat = j.dump();
  if (!j.is_structured() || j.empty() || (indent > 0 && flat.size() + static_cast<std::size_t>(indent) <= kWidth)) {
    out += flat;
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out += j.is_object() ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += json(it.key()).dump() + ": ";
    emit(*it, indent + 2, out);
  }
  out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (j.is_object() ? "}" : "]");
}

class Decoder {
 public:
  Decoder(std::string_view text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  int line_of_offset(std::size_t offset) const {
    offset = std::min(offset, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
  }
  int line_of_key(std::string_view key) const {
    const std::string needle = "\"" + std::string(key) + "\"";
    const auto pos = text_.find(needle);
    return pos == std::string_view::npos ? 0 : line_of_offset(pos);
  }
  std::string where(int line) const { return origin_ + (line > 0 ? ":" + std::to_string(line) : std::string()); }
  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    const int line = line_of_key(key);
    throw ParseError(where(line) + ": " + what, line);
  }

  const json& field(const json& obj, std::string_view key, std::string_view context) const {
    if (!obj.is_object()) fail(context, std::string(context) + " must be an object");
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(context, "missing field '" + std::string(key) + "' in " + std::string(context));
    return *it;
  }
  std::int64_t integer(const json& v, std::string_view key) const {
    if (!v.is_number_integer()) fail(key, "'" + std::string(key) + "' expects an integer");
    return v.get<std::int64_t>();
  }
  std::size_t index(const json& v, std::string_view key, std::size_t bound) const {
    const auto i = integer(v, key);
    if (i < 0 || static_cast<std::size_t>(i) >= bound)
      fail(key, "index " + std::to_string(i) + " out of range in '" + std::string(key) + "'");
    return static_cast<std::size_t>(i);
  }
  std::string string(const json& v, std::string_view key) const {
    if (!v.is_string()) fail(key, "'" + std::string(key) + "' expects a string");
    return v.get<std::string>();
  }
  Rational rational(const json& v, std::string_view key) const {
    try {
      return parse_rational(string(v, key));
    } catch (const ParseError& e) {
      fail(key, e.what());
    }
  }
  Polynomial polynomial(const json& v, std::string_view key, std::size_t nvars) const {
    Polynomial p;
    try {
      p = parse_polynomial(string(v, key));
    } catch (const ParseError& e) {
      fail(key, e.what());
    }
    if (p.nvars() > nvars) fail(key, "polynomial '" + v.get<std::string>() + "' uses more than " + std::to_string(nvars) + " variables");
    return p;
  }
  const json& array(const json& v, std::string_view key) const {
    if (!v.is_array()) fail(key, "'" + std::string(key) + "' expects an array");
    return v;
  }
  RationalMatrix matrix(const json& v, std::string_view key, std::size_t rows, std::size_t cols) const {
    RationalMatrix a = RationalMatrix::Zero(static_cast<Index>(rows), static_cast<Index>(cols));
    for (const auto& t : array(v, key)) {
      if (!t.is_array() || t.size() != 3) fail(key, "'" + std::string(key) + "' entries are [row, col, \"value\"]");
      a(static_cast<Index>(index(t[0], key, rows)), static_cast<Index>(index(t[1], key, cols))) = rational(t[2], key);
    }
    return a;
  }
  RationalVector vector(const json& v, std::string_view key, std::size_t size) const {
    RationalVector out = RationalVector::Zero(static_cast<Index>(size));
    for (const auto& t : array(v, key)) {
      if (!t.is_array() || t.size() != 2) fail(key, "'" + std::string(key) + "' entries are [index, \"value\"]");
      out(static_cast<Index>(index(t[0], key, size))) = rational(t[1], key);
    }
    return out;
  }

  ModelFile decode(const json& j) const {
    ModelFile f;
    InvariantModel& m = f.model;
    if (!j.is_object()) throw ParseError(where(1) + ": model file must be a JSON object", 1);
    const auto version = integer(field(j, "schema_version", "model"), "schema_version");
    if (version != kSchemaVersion)
      throw VersionError(where(line_of_key("schema_version")) + ": unsupported schema_version " +
                         std::to_string(version) + " (this build reads " + std::to_string(kSchemaVersion) + ")");
    m.name = string(field(j, "name", "model"), "name");
    if (auto it = j.find("description"); it != j.end()) f.description = string(*it, "description");
    const auto rank = integer(field(j, "torus_rank", "model"), "torus_rank");
    if (rank < 0) fail("torus_rank", "torus_rank must be nonnegative");
    m.torus_rank = static_cast<std::size_t>(rank);
    for (const auto& g : array(field(j, "generators", "model"), "generators"))
      m.generators.push_back({string(field(g, "name", "generators"), "generators"),
                              static_cast<int>(integer(field(g, "degree", "generators"), "generators"))});
    const std::size_t n = m.size();
    m.d = matrix(field(j, "d", "model"), "d", n, n);
    const json& cs = array(field(j, "contractions", "model"), "contractions");
    if (cs.size() != m.torus_rank)
      fail("contractions", "expected " + std::to_string(m.torus_rank) + " contraction matrices, found " +
                               std::to_string(cs.size()));
    for (const auto& c : cs) m.contractions.push_back(matrix(c, "contractions", n, n));
    for (const auto& p : array(field(j, "products", "model"), "products")) {
      const auto a = index(field(p, "left", "products"), "products", n);
      const auto b = index(field(p, "right", "products"), "products", n);
      if (!m.products.emplace(std::pair{a, b}, vector(field(p, "value", "products"), "products", n)).second)
        fail("products", "duplicate product entry for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    m.top_degree = static_cast<int>(integer(field(j, "top_degree", "model"), "top_degree"));
    for (const auto& t : array(field(j, "integration", "model"), "integration")) {
      if (!t.is_array() || t.size() != 2) fail("integration", "integration entries are [index, \"value\"]");
      m.integration[index(t[0], "integration", n)] = rational(t[1], "integration");
    }
    const json& compact = field(j, "compact", "model");
    if (!compact.is_boolean()) fail("compact", "'compact' expects true or false");
    m.compact = compact.get<bool>();
    const json& classes = field(j, "classes", "model");
    if (!classes.is_object()) fail("classes", "'classes' expects an object");
    for (auto it = classes.begin(); it != classes.end(); ++it) {
      PolyVector x = PolyVector::Zero(static_cast<Index>(n));
      for (const auto& t : array(it.value(), "classes")) {
        if (!t.is_array() || t.size() != 2) fail("classes", "class terms are [index, \"polynomial\"]");
        x(static_cast<Index>(index(t[0], "classes", n))) = polynomial(t[1], "classes", m.torus_rank);
      }
      m.classes[it.key()] = x;
    }
    for (const auto& p : array(field(j, "fixed_points", "model"), "fixed_points")) {
      FixedPointDatum fp;
      fp.name = string(field(p, "name", "fixed_points"), "fixed_points");
      const json& tangent = field(p, "tangent", "fixed_points");
      const auto trivial = integer(field(tangent, "trivial", "tangent"), "tangent");
      if (trivial < 0) fail("tangent", "trivial multiplicity must be nonnegative");
      fp.tangent.trivial_multiplicity = static_cast<unsigned>(trivial);
      for (const auto& w : array(field(tangent, "weights", "tangent"), "weights")) {
        if (!w.is_array() || w.size() != 2 || !w[0].is_array())
          fail("weights", "weights are [[a1, ..., an], multiplicity]");
        Weight weight;
        for (const auto& a : w[0]) weight.coeffs.push_back(integer(a, "weights"));
        const auto mult = integer(w[1], "weights");
        if (mult < 1) fail("weights", "weight multiplicity must be positive");
        fp.tangent.weighted.emplace_back(std::move(weight), static_cast<unsigned>(mult));
      }
      try {
        fp.tangent.validate(m.torus_rank);
      } catch (const DataError& e) {
        fail("weights", e.what());
      }
      const json& r = field(p, "restrictions", "fixed_points");
      if (!r.is_object()) fail("restrictions", "'restrictions' expects an object");
      for (auto it = r.begin(); it != r.end(); ++it)
        fp.restrictions[it.key()] = polynomial(it.value(), "restrictions", m.torus_rank);
      if (auto e = p.find("evaluation"); e != p.end()) fp.evaluation = vector(*e, "evaluation", n);
      m.fixed_points.push_back(std::move(fp));
    }
    if (auto maps = j.find("maps"); maps != j.end()) {
      for (const auto& e : array(*maps, "maps")) {
        MapEntry me;
        me.name = string(field(e, "name", "maps"), "maps");
        me.source = string(field(e, "source", "maps"), "maps");
        me.target = string(field(e, "target", "maps"), "maps");
        const json& proper = field(e, "proper", "maps");
        if (!proper.is_boolean()) fail("maps", "'proper' expects true or false");
        me.proper = proper.get<bool>();
        const auto size_of = [&](const std::string& ref) -> std::size_t {
          if (ref == "self") return n;
          if (ref.starts_with("builtin:")) {
            try {
              return builtin(ref.substr(8)).size();
            } catch (const DataError& err) {
              fail("maps", err.what());
            }
          }
          fail("maps", "map endpoint '" + ref + "' must be \"self\" or \"builtin:NAME\"");
        };
        me.pullback = matrix(field(e, "pullback", "maps"), "pullback", size_of(me.source), size_of(me.target));
        f.maps.push_back(std::move(me));
      }
    }
    return f;
  }

  std::string section_for(const std::string& axiom) const {
    if (axiom.find("f*") != std::string::npos) return "maps";
    if (axiom.find("restriction") != std::string::npos || axiom.find("fixed point") != std::string::npos ||
        axiom.find("evaluation") != std::string::npos)
      return "fixed_points";
    if (axiom.find("integration") != std::string::npos || axiom.find("∫") != std::string::npos) return "integration";
    if (axiom.find("product") != std::string::npos || axiom.find("commutativity") != std::string::npos)
      return "products";
    if (axiom.find("class") != std::string::npos) return "classes";
    if (axiom.find('c') != std::string::npos) return "contractions";
    return "d";
  }

  [[noreturn]] void reject(const std::string& subject, ValidationReport report) const {
    const int line = line_of_key(section_for(report.violations.front().axiom));
    std::string what = where(line) + ": " + subject + " violates " + std::to_string(report.violations.size()) +
                       " axiom check(s); first: " + report.violations.front().axiom + ": " +
                       report.violations.front().witness;
    throw ValidationFailure(what, std::move(report), line);
  }

 private:
  std::string_view text_;
  std::string origin_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file '" + path.string() + "'");
  out << text;
}

ModelPtr resolve_endpoint(const std::string& ref, const ModelPtr& self) {
  if (ref == "self") return self;
  return std::make_shared<const InvariantModel>(builtin(std::string_view(ref).substr(8)));
}

}  // namespace

ModelFile parse_model_file(std::string_view text, const std::string& origin) {
  Decoder dec(text, origin);
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const int line = dec.line_of_offset(e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(dec.where(line) + ": malformed JSON: " + e.what(), line);
  }
  ModelFile f = dec.decode(j);
  ValidationReport report;
  try {
    report = validate_model(f.model);
  } catch (const StructuralError& e) {
    dec.fail("generators", e.what());
  }
  if (!report.ok()) dec.reject("model '" + f.model.name + "'", std::move(report));
  auto self = std::make_shared<const InvariantModel>(f.model);
  for (const auto& e : f.maps) {
    ModelMap map{e.name, resolve_endpoint(e.source, self), resolve_endpoint(e.target, self), e.pullback, e.proper};
    ValidationReport mr;
    try {
      mr = validate_map(map);
    } catch (const StructuralError& err) {
      dec.fail("maps", err.what());
    }
    if (!mr.ok()) dec.reject("map '" + e.name + "'", std::move(mr));
  }
  return f;
}

std::string format_model_file(const ModelFile& f) {
  json j = encode(f.model);
  if (!f.description.empty()) {
    json with = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      with[it.key()] = it.value();
      if (it.key() == "name") with["description"] = f.description;
    }
    j = std::move(with);
  }
  if (!f.maps.empty()) {
    json maps = json::array();
    for (const auto& e : f.maps)
      maps.push_back(json{{"name", e.name},
                          {"source", e.source},
                          {"target", e.target},
                          {"proper", e.proper},
                          {"pullback", triplets(e.pullback)}});
    j["maps"] = maps;
  }
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

ModelFile load_model_file(const std::filesystem::path& path) { return parse_model_file(read_file(path), path.string()); }

InvariantModel load_model(const std::filesystem::path& path) { return load_model_file(path).model; }

void save_model(const InvariantModel& m, const std::filesystem::path& path) { save_model_file(ModelFile{m, {}, {}}, path); }

void save_model_file(const ModelFile& f, const std::filesystem::path& path) { write_file(path, format_model_file(f)); }

ModelFile select_model(std::string_view selector) {
  if (selector.starts_with("builtin:")) return ModelFile{builtin(selector.substr(8)), {}, {}};
  return load_model_file(std::filesystem::path(std::string(selector)));
}

std::vector<ModelMap> available_maps(const ModelPtr& self, const std::vector<MapEntry>& entries) {
  std::vector<ModelMap> maps;
  for (const auto& e : entries)
    maps.push_back({e.name, resolve_endpoint(e.source, self), resolve_endpoint(e.target, self), e.pullback, e.proper});
  maps.push_back(identity_map(self));
  auto pt = std::make_shared<const InvariantModel>(point(self->torus_rank));
  if (auto one = self->classes.find("one"); one != self->classes.end()) {
    bool constant = true;
    for (Index i = 0; i < one->second.size(); ++i) constant = constant && one->second(i).is_constant();
    if (constant) maps.push_back(constant_map(self, pt));
  }
  for (std::size_t i = 0; i < self->fixed_points.size(); ++i)
    if (self->fixed_points[i].evaluation) maps.push_back(fixed_point_inclusion(pt, self, i));
  return maps;
}

}  // namespace eqcoh
