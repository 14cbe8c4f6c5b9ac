#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "ghk/states.hpp"

namespace ghk::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token) {
  const std::string t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("not a number: '" + token + "'");
  }
  return value;
}

std::string read_source(const std::string& path_or_inline) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_inline, ec)) {
    std::ifstream in(path_or_inline);
    if (!in) throw ParseError("cannot read " + path_or_inline);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return path_or_inline;
}

Eigen::Matrix4d matrix_from_numbers(const std::vector<double>& v) {
  if (v.size() != 16) {
    throw ParseError("a 4x4 covariance matrix needs 16 entries, got " + std::to_string(v.size()));
  }
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = v[static_cast<std::size_t>(4 * i + j)];
  }
  return m;
}

std::vector<double> json_numbers(const Json& j) {
  std::vector<double> out;
  auto walk = [&](const auto& self, const Json& node) -> void {
    if (node.is_array()) {
      for (const auto& child : node) self(self, child);
    } else if (node.is_number()) {
      out.push_back(node.get<double>());
    } else {
      throw ParseError("matrix JSON must contain only numbers");
    }
  };
  walk(walk, j);
  return out;
}

// Accepts a report document, {"covariance_matrix": ..., "mean": ...}, or a bare array.
void matrix_from_json(const Json& doc, StateInput& input) {
  const Json* node = &doc;
  if (doc.is_object() && doc.contains("input")) node = &doc.at("input");
  if (node->is_object()) {
    if (!node->contains("covariance_matrix")) throw ParseError("JSON input lacks covariance_matrix");
    input.cm = matrix_from_numbers(json_numbers(node->at("covariance_matrix")));
    if (node->contains("mean")) {
      const auto m = json_numbers(node->at("mean"));
      if (m.size() != 4) throw ParseError("mean needs 4 entries");
      input.mean = Eigen::Vector4d(m[0], m[1], m[2], m[3]);
    }
  } else {
    input.cm = matrix_from_numbers(json_numbers(*node));
  }
}

double require(const std::map<std::string, double>& kv, const std::string& key, const std::string& family) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("--" + family + " needs " + key + "=<value>");
  return it->second;
}

void reject_unknown(const std::map<std::string, double>& kv, std::initializer_list<const char*> allowed,
                    const std::string& family) {
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ParseError("unknown --" + family + " parameter '" + key + "'");
  }
}

}  // namespace

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_double(token));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return out;
}

std::map<std::string, double> parse_assignments(const std::vector<std::string>& tokens) {
  std::map<std::string, double> out;
  for (const auto& raw : tokens) {
    std::stringstream parts(raw);
    std::string item;
    while (std::getline(parts, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + item + "'");
      const std::string key = trim(item.substr(0, eq));
      if (out.count(key)) throw ParseError("parameter '" + key + "' given twice");
      out[key] = parse_double(item.substr(eq + 1));
    }
  }
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

StateInput parse_state(const InputFlags& flags) {
  const int sources = static_cast<int>(!flags.sts.empty()) + static_cast<int>(!flags.mts.empty()) +
                      static_cast<int>(!flags.std_form.empty()) + static_cast<int>(!flags.matrix.empty());
  if (sources != 1) throw ParseError("give exactly one of --sts, --mts, --std-form, --matrix");

  StateInput input;
  if (!flags.sts.empty()) {
    const auto kv = parse_assignments(flags.sts);
    reject_unknown(kv, {"nbar1", "nbar2", "r", "phi"}, "sts");
    StsParams p{require(kv, "nbar1", "sts"), require(kv, "nbar2", "sts"), require(kv, "r", "sts"),
                kv.count("phi") ? kv.at("phi") : 0.0};
    input.cm = standard_form_matrix(sts_standard_form(p));
    input.echo = Json{{"kind", "sts"}, {"nbar1", p.nbar1}, {"nbar2", p.nbar2}, {"r", p.r}, {"phi", p.phi}};
  } else if (!flags.mts.empty()) {
    const auto kv = parse_assignments(flags.mts);
    reject_unknown(kv, {"kappa1", "kappa2", "theta", "phi"}, "mts");
    MtsParams p{require(kv, "kappa1", "mts"), require(kv, "kappa2", "mts"), require(kv, "theta", "mts"),
                kv.count("phi") ? kv.at("phi") : 0.0};
    input.cm = standard_form_matrix(mts_standard_form(p));
    input.echo =
        Json{{"kind", "mts"}, {"kappa1", p.kappa1}, {"kappa2", p.kappa2}, {"theta", p.theta}, {"phi", p.phi}};
  } else if (!flags.std_form.empty()) {
    const auto v = parse_numbers(flags.std_form);
    if (v.size() != 4 && v.size() != 6) throw ParseError("--std-form needs b1,b2,c,d[,s1,s2]");
    StandardForm sf{v[0], v[1], v[2], v[3]};
    if (v.size() == 6) {
      sf.s1 = v[4];
      sf.s2 = v[5];
    }
    input.cm = covariance(sf).matrix();
    input.echo = Json{{"kind", "std-form"}, {"b1", sf.b1}, {"b2", sf.b2}, {"c", sf.c},
                      {"d", sf.d},          {"s1", sf.s1}, {"s2", sf.s2}};
  } else {
    const std::string text = trim(read_source(flags.matrix));
    if (!text.empty() && (text.front() == '{' || text.front() == '[')) {
      Json doc;
      try {
        doc = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
      }
      matrix_from_json(doc, input);
    } else {
      input.cm = matrix_from_numbers(parse_numbers(text));
    }
    input.echo = Json{{"kind", "matrix"}};
  }

  if (!flags.mean.empty()) {
    const auto m = parse_numbers(flags.mean);
    if (m.size() != 4) throw ParseError("--mean needs q1,p1,q2,p2");
    input.mean = Eigen::Vector4d(m[0], m[1], m[2], m[3]);
  }
  return input;
}

}  // namespace ghk::cli
