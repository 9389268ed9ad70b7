#pragma once

// JSON run configuration for the command-line tool. Every section is checked
// against the schema in docs/config.schema.json by hand: unknown keys,
// missing keys and wrong types are rejected with the file line of the
// offending entry.

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "squidacc/squidacc.hpp"

namespace squidacc::cli {

using nlohmann::json;

class config_error : public error {
 public:
  config_error(const std::string& message, int line)
      : error(errc::configuration, message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// JSON pointer -> 1-based line of the value (or of the key that holds it).
using LineIndex = std::map<std::string, int>;

namespace detail {

inline std::string escape_token(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Structural scan of text nlohmann has already accepted.
inline LineIndex index_lines(std::string_view text) {
  struct Frame {
    bool object;
    std::string base;
    std::string key;
    std::size_t index = 0;
    bool expecting_key = true;
  };
  LineIndex index;
  std::vector<Frame> stack;
  int line = 1;
  auto here = [&]() -> std::string {
    if (stack.empty()) return "";
    const Frame& f = stack.back();
    return f.base + "/" + (f.object ? escape_token(f.key) : std::to_string(f.index));
  };
  auto mark = [&](int at) { index.emplace(here(), at); };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    switch (c) {
      case '\n':
        ++line;
        break;
      case '{':
      case '[':
        mark(line);
        stack.push_back({c == '{', here(), "", 0, true});
        break;
      case '}':
      case ']':
        if (!stack.empty()) stack.pop_back();
        break;
      case ',':
        if (!stack.empty()) {
          if (stack.back().object) {
            stack.back().expecting_key = true;
          } else {
            ++stack.back().index;
          }
        }
        break;
      case ':':
        if (!stack.empty()) stack.back().expecting_key = false;
        break;
      case '"': {
        const std::size_t start = i;
        for (++i; i < text.size() && text[i] != '"'; ++i) {
          if (text[i] == '\\') ++i;
        }
        const std::string_view raw = text.substr(start, i - start + 1);
        if (!stack.empty() && stack.back().object && stack.back().expecting_key) {
          stack.back().key = json::parse(raw).get<std::string>();
          mark(line);  // key line; kept if the value sits on a later line
        } else {
          mark(line);
        }
        break;
      }
      case ' ':
      case '\t':
      case '\r':
        break;
      default:  // number, true, false, null
        mark(line);
        while (i + 1 < text.size() && std::string_view(",]}\n \t\r").find(text[i + 1]) ==
                                          std::string_view::npos) {
          ++i;
        }
        break;
    }
  }
  return index;
}

inline std::string type_name(const json& j) {
  if (j.is_number()) return "number";
  return j.type_name();
}

}  // namespace detail

/// A view on one value of the parsed document that knows its pointer and
/// source line.
class Node {
 public:
  Node(const json& value, std::string pointer, const LineIndex& lines, const std::string& source)
      : value_(&value), pointer_(std::move(pointer)), lines_(&lines), source_(&source) {}

  const json& value() const { return *value_; }
  const std::string& pointer() const { return pointer_; }

  int line() const {
    std::string p = pointer_;
    for (;;) {
      const auto it = lines_->find(p);
      if (it != lines_->end()) return it->second;
      if (p.empty()) return 1;
      p = p.substr(0, p.rfind('/'));
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << *source_ << ":" << line() << ": " << (pointer_.empty() ? "/" : pointer_) << ": "
       << message;
    throw config_error(os.str(), line());
  }

  void expect_object() const {
    if (!value_->is_object()) fail("expected object, got " + detail::type_name(*value_));
  }

  bool has(const std::string& key) const { return value_->contains(key); }

  Node at(const std::string& key) const {
    expect_object();
    if (!value_->contains(key)) fail("missing required key '" + key + "'");
    return child(key);
  }

  std::optional<Node> find(const std::string& key) const {
    expect_object();
    if (!value_->contains(key)) return std::nullopt;
    return child(key);
  }

  std::vector<Node> elements() const {
    if (!value_->is_array()) fail("expected array, got " + detail::type_name(*value_));
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_->size(); ++i) {
      out.emplace_back((*value_)[i], pointer_ + "/" + std::to_string(i), *lines_, *source_);
    }
    return out;
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    expect_object();
    for (const auto& [key, v] : value_->items()) {
      bool known = false;
      for (auto k : keys) known = known || k == key;
      if (!known) child(key).fail("unknown key '" + key + "'");
    }
  }

  double number() const {
    if (!value_->is_number()) fail("expected number, got " + detail::type_name(*value_));
    const double x = value_->get<double>();
    if (!std::isfinite(x)) fail("number must be finite");
    return x;
  }

  double positive() const {
    const double x = number();
    if (!(x > 0)) fail("must be positive");
    return x;
  }

  double non_negative() const {
    const double x = number();
    if (!(x >= 0)) fail("must be non-negative");
    return x;
  }

  long integer(long min_value) const {
    if (!value_->is_number_integer()) fail("expected integer, got " + detail::type_name(*value_));
    const long x = value_->get<long>();
    if (x < min_value) fail("must be at least " + std::to_string(min_value));
    return x;
  }

  std::string string() const {
    if (!value_->is_string()) fail("expected string, got " + detail::type_name(*value_));
    return value_->get<std::string>();
  }

  std::string choice(std::initializer_list<std::string_view> options) const {
    const std::string s = string();
    for (auto o : options) {
      if (o == s) return s;
    }
    std::string list;
    for (auto o : options) list += (list.empty() ? "" : ", ") + std::string(o);
    fail("'" + s + "' is not one of " + list);
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (const auto& e : elements()) out.push_back(e.number());
    return out;
  }

  /// Number or [re, im].
  cplx complex() const {
    if (value_->is_array()) {
      const auto parts = elements();
      if (parts.size() != 2) fail("complex value must be [re, im]");
      return {parts[0].number(), parts[1].number()};
    }
    return number();
  }

 private:
  Node child(const std::string& key) const {
    return Node((*value_)[key], pointer_ + "/" + detail::escape_token(key), *lines_, *source_);
  }

  const json* value_;
  std::string pointer_;
  const LineIndex* lines_;
  const std::string* source_;
};

struct GridSpec {
  double start = 0.0;
  std::optional<double> stop;  // unset: "a_max" (dc sweeps only)
  std::size_t count = 0;
  bool log = false;
  std::optional<std::vector<double>> points;  // explicit grid overrides the rest
  std::optional<double> a_omega;              // rf sweeps: drive amplitude [m/s^2]
};

struct SimulationSpec {
  double omega = 0.0;
  cplx a_omega = 0.0;
  std::optional<double> dt;
  std::optional<double> t_end;
  double settle_periods = 0.0;
  int analysis_periods = 4;
};

struct DeviationSpec {
  double a = 0.0;
  std::optional<double> v;
  std::optional<double> I;
  std::vector<double> T_grid;
};

struct InvertSpec {
  std::vector<double> omegas;
  std::optional<int> periods;
  double skip_time = 0.0;
};

struct OutputSpec {
  std::optional<std::string> path;
  std::optional<std::string> summary;
  int precision = 12;
};

struct RunConfig {
  std::string source;
  std::string kind;  // "dc" or "rf"
  std::optional<WireGeometry> geometry;
  std::optional<Material> material;
  std::optional<DcSquidConfig> dc;
  std::optional<RfCircuitConfig> rf;
  std::optional<GridSpec> sweep;
  std::optional<SimulationSpec> simulation;
  std::optional<DeviationSpec> deviation;
  std::optional<InvertSpec> invert;
  OutputSpec output;
};

namespace detail {

// Library validation failures are reported against the section they came from.
template <typename F>
auto checked(const Node& node, F&& build) {
  try {
    return build();
  } catch (const config_error&) {
    throw;
  } catch (const error& e) {
    node.fail(e.what());
  }
}

inline WireGeometry parse_geometry(const Node& n) {
  const std::string shape = n.at("shape").choice({"ring", "rectangle"});
  WireGeometry g{Ring{1.0}, 0.0};
  if (shape == "ring") {
    n.allow_only({"shape", "Rs", "dRs", "d"});
    const auto dRs = n.find("dRs");
    g = {Ring{n.at("Rs").positive(), dRs ? dRs->non_negative() : 0.0}, n.at("d").positive()};
  } else {
    n.allow_only({"shape", "b", "c", "d"});
    g = {Rectangle{n.at("b").positive(), n.at("c").positive()}, n.at("d").positive()};
  }
  checked(n, [&] { return validate(g); });
  return g;
}

inline Material parse_material(const Node& n) {
  n.allow_only({"n", "lambda", "xi0", "T", "Tc", "vF"});
  Material m{n.at("n").number(),  n.at("lambda").number(), n.at("xi0").number(),
             n.at("T").number(),  n.at("Tc").number(),     n.at("vF").number()};
  checked(n, [&] {
    validate(m);
    return 0;
  });
  return m;
}

inline GridSpec parse_grid(const Node& n) {
  n.allow_only({"start", "stop", "count", "scale", "points", "a_omega"});
  GridSpec g;
  if (const auto a = n.find("a_omega")) g.a_omega = a->non_negative();
  if (const auto p = n.find("points")) {
    g.points = p->numbers();
    return g;
  }
  if (const auto s = n.find("start")) g.start = s->number();
  const Node stop = n.at("stop");
  if (stop.value().is_string()) {
    stop.choice({"a_max"});
  } else {
    g.stop = stop.number();
  }
  g.count = static_cast<std::size_t>(n.at("count").integer(0));
  if (const auto s = n.find("scale")) g.log = s->choice({"linear", "log"}) == "log";
  if (g.log && (!(g.start > 0) || (g.stop && !(*g.stop > 0)))) {
    n.fail("log grids need positive start and stop");
  }
  if (g.stop && g.count > 1 && !(*g.stop > g.start)) n.fail("stop must exceed start");
  return g;
}

inline SimulationSpec parse_simulation(const Node& n) {
  n.allow_only({"omega", "a_omega", "dt", "t_end", "settle_periods", "analysis_periods"});
  SimulationSpec s;
  s.omega = n.at("omega").positive();
  s.a_omega = n.at("a_omega").complex();
  if (const auto x = n.find("dt")) s.dt = x->positive();
  if (const auto x = n.find("t_end")) s.t_end = x->positive();
  if (const auto x = n.find("settle_periods")) s.settle_periods = x->non_negative();
  if (const auto x = n.find("analysis_periods")) {
    s.analysis_periods = static_cast<int>(x->integer(1));
  }
  return s;
}

inline DeviationSpec parse_deviation(const Node& n) {
  n.allow_only({"a", "v", "I", "T_grid"});
  DeviationSpec d;
  d.a = n.at("a").non_negative();
  if (const auto x = n.find("v")) d.v = x->positive();
  if (const auto x = n.find("I")) d.I = x->positive();
  if (d.v && d.I) n.fail("give either 'v' or 'I', not both");
  if (!d.v && !d.I) n.fail("missing required key 'v' (or 'I')");
  if (const auto x = n.find("T_grid")) d.T_grid = x->numbers();
  return d;
}

inline InvertSpec parse_invert(const Node& n) {
  n.allow_only({"omegas", "periods", "skip_time"});
  InvertSpec s;
  s.omegas = n.at("omegas").numbers();
  if (const auto x = n.find("periods")) s.periods = static_cast<int>(x->integer(2));
  if (const auto x = n.find("skip_time")) s.skip_time = x->non_negative();
  return s;
}

inline OutputSpec parse_output(const Node& n) {
  n.allow_only({"path", "summary", "precision"});
  OutputSpec o;
  if (const auto x = n.find("path")) o.path = x->string();
  if (const auto x = n.find("summary")) o.summary = x->string();
  if (const auto x = n.find("precision")) {
    o.precision = static_cast<int>(x->integer(1));
    if (o.precision > 17) x->fail("precision above 17 digits is meaningless for doubles");
  }
  return o;
}

inline void parse_device(const Node& n, RunConfig& cfg) {
  cfg.kind = n.at("kind").choice({"dc", "rf"});
  if (const auto g = n.find("geometry")) cfg.geometry = parse_geometry(*g);
  if (const auto m = n.find("material")) cfg.material = parse_material(*m);

  if (cfg.kind == "dc") {
    n.allow_only({"kind", "geometry", "material", "Ic"});
    n.at("geometry");
    n.at("material");
    const double Ic = n.at("Ic").positive();
    cfg.dc = DcSquidConfig{*cfg.geometry, *cfg.material, Ic};
    return;
  }

  n.allow_only({"kind", "geometry", "material", "Ic", "LJ", "L", "R", "C", "Idc", "f"});
  RfCircuitConfig rf{};
  const auto Ic = n.find("Ic");
  const auto LJ = n.find("LJ");
  if (Ic && LJ) n.fail("give either 'Ic' or 'LJ', not both");
  if (!Ic && !LJ) n.fail("missing required key 'Ic' (or 'LJ')");
  rf.Ic = Ic ? Ic->positive() : critical_current_from_inductance(LJ->positive());
  rf.L = n.at("L").positive();
  rf.R = n.at("R").positive();
  rf.C = n.at("C").positive();
  rf.Idc = n.at("Idc").positive();
  if (const auto f = n.find("f")) {
    rf.f = f->positive();
  } else if (cfg.geometry && cfg.material) {
    rf.f = checked(n, [&] { return form_factor(*cfg.geometry, *cfg.material).f; });
  } else {
    n.fail("missing required key 'f' (or 'geometry' and 'material' to derive it)");
  }
  checked(n, [&] {
    validate(rf);
    return 0;
  });
  cfg.rf = rf;
}

}  // namespace detail

/// Parses and checks a configuration held in memory; `source` names it in
/// error messages.
inline RunConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) line += text[i] == '\n';
    throw config_error(source + ":" + std::to_string(line) + ": malformed JSON", line);
  }
  const LineIndex lines = detail::index_lines(text);
  const Node root(doc, "", lines, source);
  root.allow_only({"device", "sweep", "simulation", "deviation", "invert", "output"});

  RunConfig cfg;
  cfg.source = source;
  detail::parse_device(root.at("device"), cfg);
  if (const auto n = root.find("sweep")) {
    cfg.sweep = detail::parse_grid(*n);
    if (n->has("a_omega") && cfg.kind != "rf") n->at("a_omega").fail("only rf sweeps take a_omega");
    if (!cfg.sweep->stop && !cfg.sweep->points && cfg.kind != "dc") {
      n->at("stop").fail("'a_max' is only defined for dc devices");
    }
  }
  if (const auto n = root.find("simulation")) cfg.simulation = detail::parse_simulation(*n);
  if (const auto n = root.find("deviation")) cfg.deviation = detail::parse_deviation(*n);
  if (const auto n = root.find("invert")) cfg.invert = detail::parse_invert(*n);
  if (const auto n = root.find("output")) cfg.output = detail::parse_output(*n);
  return cfg;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::configuration, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline RunConfig load_config(const std::string& path) { return parse_config(read_file(path), path); }

}  // namespace squidacc::cli
