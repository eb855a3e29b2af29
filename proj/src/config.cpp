#include "fairdyn/config.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fairdyn/errors.hpp"

namespace fairdyn {

namespace {

// Minimal recursive-descent parser for one value of the scenario format:
// number | "string" | true | false | [v, v, ...] | { key = v, ... }.
class ValueParser {
 public:
  ValueParser(const std::string& text, int line) : text_(text), line_(line) {}

  nlohmann::json parse() {
    nlohmann::json v = parse_value();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of value");
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  nlohmann::json parse_value() {
    const char c = peek();
    if (c == '[') return parse_array();
    if (c == '{') return parse_table();
    if (c == '"') return parse_string();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_keyword();
    return parse_number();
  }

  nlohmann::json parse_array() {
    expect('[');
    nlohmann::json arr = nlohmann::json::array();
    if (peek() == ']') {
      ++pos_;
      return arr;
    }
    while (true) {
      arr.push_back(parse_value());
      const char c = peek();
      ++pos_;
      if (c == ']') return arr;
      if (c != ',') fail("expected ',' or ']' in array");
      if (peek() == ']') {  // trailing comma
        ++pos_;
        return arr;
      }
    }
  }

  nlohmann::json parse_table() {
    expect('{');
    nlohmann::json obj = nlohmann::json::object();
    if (peek() == '}') {
      ++pos_;
      return obj;
    }
    while (true) {
      skip_ws();
      std::string key;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        key += text_[pos_++];
      }
      if (key.empty()) fail("expected key in table");
      expect('=');
      obj[key] = parse_value();
      const char c = peek();
      ++pos_;
      if (c == '}') return obj;
      if (c != ',') fail("expected ',' or '}' in table");
    }
  }

  nlohmann::json parse_string() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') out += text_[pos_++];
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  nlohmann::json parse_keyword() {
    std::string word;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      word += text_[pos_++];
    }
    if (word == "true") return true;
    if (word == "false") return false;
    if (word == "inf") return std::numeric_limits<double>::infinity();
    fail("unknown keyword '" + word + "'");
  }

  nlohmann::json parse_number() {
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    bool is_float = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' || c == 'e' || c == 'E' || c == '-' || c == '+') {
        // exponent signs only valid mid-number; std::stod rejects the rest
        if ((c == '-' || c == '+') &&
            !(text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
          break;
        }
        is_float = is_float || c == '.' || c == 'e' || c == 'E';
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a value");
    const std::string token = text_.substr(start, pos_ - start);
    try {
      if (is_float) return std::stod(token);
      return static_cast<long long>(std::stoll(token));
    } catch (const std::exception&) {
      fail("malformed number '" + token + "'");
    }
  }

  const std::string& text_;
  int line_;
  std::size_t pos_ = 0;
};

int bracket_balance(const std::string& s) {
  int balance = 0;
  bool in_string = false;
  for (char c : s) {
    if (c == '"') in_string = !in_string;
    if (in_string) continue;
    if (c == '[' || c == '{') ++balance;
    if (c == ']' || c == '}') --balance;
  }
  return balance;
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

nlohmann::json parse_scenario_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::object();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const int start_line = line_no;
    std::string logical = strip_comment(line);
    // Values may span lines until brackets balance.
    while (bracket_balance(logical) > 0 && std::getline(in, line)) {
      ++line_no;
      logical += ' ' + strip_comment(line);
    }
    std::string trimmed = logical;
    const auto first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(start_line) +
                        ": expected 'key = value'");
    }
    std::string key = trimmed.substr(0, eq);
    const auto key_end = key.find_last_not_of(" \t");
    key = key.substr(first, key_end - first + 1);
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(start_line) + ": empty key");
    }
    doc[key] = ValueParser(trimmed.substr(eq + 1), start_line).parse();
  }
  return doc;
}

namespace {

std::array<std::array<double, 2>, 2> parse_matrix2(const nlohmann::json& j,
                                                   const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() ||
      !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
    throw ConfigError("key '" + key + "' must be a 2x2 matrix");
  }
  std::array<std::array<double, 2>, 2> m{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (!j[r][c].is_number()) {
        throw ConfigError("key '" + key + "': entries must be numbers");
      }
      m[r][c] = j[r][c].get<double>();
    }
  }
  return m;
}

std::vector<double> parse_vector(const nlohmann::json& j,
                                 const std::string& key) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("key '" + key + "' must be a nonempty array");
  }
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) {
      throw ConfigError("key '" + key + "': entries must be numbers");
    }
    v.push_back(e.get<double>());
  }
  return v;
}

const nlohmann::json& require(const nlohmann::json& doc,
                              const std::string& key) {
  if (!doc.contains(key)) {
    throw ConfigError("missing key '" + key + "'");
  }
  return doc.at(key);
}

FeaturePair parse_distribution(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("key 'distribution' must be a table");
  }
  const std::string family = require(j, "family").get<std::string>();
  if (family != "gaussian") {
    throw ConfigError("distribution: unknown family '" + family + "'");
  }
  return FeaturePair::gaussian(require(j, "mean0").get<double>(),
                               require(j, "mean1").get<double>(),
                               require(j, "sigma").get<double>());
}

DynamicsModel parse_dynamics(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("key 'dynamics' must be a table");
  DynamicsModel dm;
  const std::string model = require(j, "model").get<std::string>();
  if (model == "replicator") {
    dm.tag = DynamicsModel::Tag::replicator;
  } else if (model == "markov") {
    dm.tag = DynamicsModel::Tag::markov;
    dm.markov_T = parse_matrix2(require(j, "T"), "dynamics.T");
    for (const auto& row : *dm.markov_T) {
      for (double t : row) {
        if (t < 0.0 || t > 1.0) {
          throw ConfigError("dynamics.T: entries must lie in [0,1]");
        }
      }
    }
  } else if (model == "best_response") {
    dm.tag = DynamicsModel::Tag::best_response;
    dm.omega = require(j, "omega").get<double>();
    if (!(dm.omega > 0.0)) {
      throw ConfigError("dynamics.omega must be positive");
    }
    const nlohmann::json& cj = require(j, "cost");
    CostCdf cost;
    const std::string fam = require(cj, "family").get<std::string>();
    if (fam == "uniform") {
      cost.family = CostCdf::Family::uniform;
      cost.hi = require(cj, "hi").get<double>();
      if (!(cost.hi > 0.0)) {
        throw ConfigError("dynamics.cost.hi must be positive");
      }
    } else if (fam == "exponential") {
      cost.family = CostCdf::Family::exponential;
      cost.rate = require(cj, "rate").get<double>();
      if (!(cost.rate > 0.0)) {
        throw ConfigError("dynamics.cost.rate must be positive");
      }
    } else {
      throw ConfigError("dynamics.cost: unknown family '" + fam + "'");
    }
    dm.cost = cost;
  } else {
    throw ConfigError("dynamics: unknown model '" + model + "'");
  }
  return dm;
}

InterventionSpec parse_intervention(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("key 'intervention' must be a table");
  InterventionSpec spec;
  const std::string tag = require(j, "tag").get<std::string>();
  if (tag == "group_independent") {
    spec.tag = InterventionSpec::Tag::group_independent;
  } else if (tag == "laissez_faire") {
    spec.tag = InterventionSpec::Tag::laissez_faire;
  } else if (tag == "demographic_parity") {
    spec.tag = InterventionSpec::Tag::demographic_parity;
  } else if (tag == "universal_subsidy") {
    spec.tag = InterventionSpec::Tag::universal_subsidy;
    spec.delta = require(j, "delta").get<double>();
  } else if (tag == "feedback_control") {
    spec.tag = InterventionSpec::Tag::feedback_control;
    spec.epsilon = require(j, "epsilon").get<double>();
  } else if (tag == "capacity_capped") {
    spec.tag = InterventionSpec::Tag::capacity_capped;
    spec.cap = require(j, "cap").get<double>();
    if (!(spec.cap > 0.0) || !(spec.cap < 1.0)) {
      throw ConfigError("intervention.cap must lie in (0,1)");
    }
    spec.inner = std::make_shared<InterventionSpec>(
        parse_intervention(require(j, "inner")));
  } else {
    throw ConfigError("intervention: unknown tag '" + tag + "'");
  }
  return spec;
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& doc) {
  static const std::set<std::string> known{
      "mu",    "distribution", "V",          "U",
      "dynamics", "intervention", "interventions", "s0",
      "steps", "stride",       "resolution"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
  GroupProfile mu(parse_vector(require(doc, "mu"), "mu"));
  FeaturePair d = parse_distribution(require(doc, "distribution"));
  ClassifierPayoffs V(parse_matrix2(require(doc, "V"), "V"));
  AgentSuccess U(parse_matrix2(require(doc, "U"), "U"));
  DynamicsModel dm = parse_dynamics(require(doc, "dynamics"));

  InterventionSpec spec;
  if (doc.contains("intervention")) {
    spec = parse_intervention(doc.at("intervention"));
  }

  RunConfig cfg{Scenario{std::move(mu), d, V, U, dm, spec},
                std::nullopt};
  if (doc.contains("s0")) {
    std::vector<double> s0 = parse_vector(doc.at("s0"), "s0");
    if (s0.size() != cfg.scenario.groups()) {
      throw ConfigError("s0: length must match mu");
    }
    cfg.s0 = PopulationState(std::move(s0));
  }
  if (doc.contains("steps")) cfg.steps = doc.at("steps").get<long>();
  if (doc.contains("stride")) cfg.stride = doc.at("stride").get<long>();
  if (doc.contains("resolution")) {
    cfg.resolution = doc.at("resolution").get<int>();
  }
  if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
  if (cfg.stride < 1) throw ConfigError("stride must be >= 1");
  if (doc.contains("interventions")) {
    const nlohmann::json& arr = doc.at("interventions");
    if (!arr.is_array()) {
      throw ConfigError("key 'interventions' must be an array of tables");
    }
    for (const auto& e : arr) {
      cfg.compare_interventions.push_back(parse_intervention(e));
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(parse_scenario_text(buf.str()));
}

}  // namespace fairdyn
