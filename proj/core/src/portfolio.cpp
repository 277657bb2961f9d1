#include "possifolio/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace possifolio {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

double require_number(const ordered_json& j, const std::string& field, const std::string& origin) {
  if (!j.contains(field)) fail(origin, "missing field '" + field + "'");
  const auto& v = j.at(field);
  if (!v.is_number()) fail(origin, "field '" + field + "': expected a number");
  return v.get<double>();
}

FuzzyRandomReturn parse_return(const ordered_json& j, const std::string& label,
                               const std::string& origin) {
  if (!j.is_object()) fail(origin, "field '" + label + "': expected an object");
  FuzzyRandomReturn r;
  r.peak_lo_base = require_number(j, "R0", origin + ", " + label);
  r.peak_hi_base = require_number(j, "R1", origin + ", " + label);
  r.peak_shift = require_number(j, "R2", origin + ", " + label);
  r.spread_left = require_number(j, "beta", origin + ", " + label);
  r.spread_right = require_number(j, "gamma", origin + ", " + label);
  return r;
}

ordered_json return_to_json(const FuzzyRandomReturn& r) {
  ordered_json j;
  j["R0"] = r.peak_lo_base;
  j["R1"] = r.peak_hi_base;
  j["R2"] = r.peak_shift;
  j["beta"] = r.spread_left;
  j["gamma"] = r.spread_right;
  return j;
}

}  // namespace

std::vector<std::string> validate(const PortfolioInstance& inst) {
  std::vector<std::string> out;
  auto check_return = [&](const FuzzyRandomReturn& r, const std::string& label) {
    if (!(r.peak_lo_base <= r.peak_hi_base))
      out.push_back(label + ": peak_lo_base exceeds peak_hi_base");
    if (r.spread_left < 0.0) out.push_back(label + ": negative left spread");
    if (r.spread_right < 0.0) out.push_back(label + ": negative right spread");
  };

  if (inst.assets.empty()) out.push_back("instance has no assets");
  if (inst.upper_bounds.size() != inst.assets.size())
    out.push_back("upper_bounds length does not match asset count");
  for (std::size_t j = 0; j < inst.assets.size(); ++j)
    check_return(inst.assets[j], "asset " + std::to_string(j + 1));
  check_return(inst.target, "target");
  for (std::size_t j = 0; j < inst.upper_bounds.size(); ++j)
    if (inst.upper_bounds[j] < 0.0)
      out.push_back("asset " + std::to_string(j + 1) + ": negative upper bound");
  if (!(inst.budget > 0.0)) out.push_back("budget must be positive");
  double total = 0.0;
  for (double u : inst.upper_bounds) total += u;
  if (total < inst.budget)
    out.push_back("budget unattainable: upper bounds sum to " + std::to_string(total) +
                  " < budget");
  return out;
}

LRFuzzyNumber aggregate_return(const PortfolioInstance& inst, const Allocation& x, double t) {
  if (x.size() != inst.assets.size())
    throw std::invalid_argument("aggregate_return: allocation length does not match asset count");
  LRFuzzyNumber z;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const LRFuzzyNumber r = realize(inst.assets[j], t);
    z.peak_lo += r.peak_lo * x[j];
    z.peak_hi += r.peak_hi * x[j];
    z.spread_left += r.spread_left * x[j];
    z.spread_right += r.spread_right * x[j];
  }
  if (!inst.assets.empty()) {
    z.left_ref = inst.assets.front().left_ref;
    z.right_ref = inst.assets.front().right_ref;
  }
  return z;
}

PortfolioInstance parse_instance(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(origin, "line " + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) fail(origin, "top level: expected an object");

  PortfolioInstance inst;
  const double n = require_number(j, "n", origin);
  inst.budget = require_number(j, "budget", origin);

  if (!j.contains("distribution")) fail(origin, "missing field 'distribution'");
  const auto& dist = j.at("distribution");
  if (!dist.is_object() || !dist.contains("type") || !dist.at("type").is_string())
    fail(origin, "field 'distribution.type': expected a string");
  const std::string type = dist.at("type").get<std::string>();
  if (type != "standard_normal")
    fail(origin, "field 'distribution.type': unsupported value '" + type + "'");
  inst.distribution = ScalarDistribution::standard_normal();

  if (!j.contains("assets") || !j.at("assets").is_array())
    fail(origin, "field 'assets': expected an array");
  std::size_t idx = 0;
  for (const auto& a : j.at("assets")) {
    const std::string label = "assets[" + std::to_string(idx) + "]";
    inst.assets.push_back(parse_return(a, label, origin));
    inst.upper_bounds.push_back(require_number(a, "U", origin + ", " + label));
    ++idx;
  }
  if (static_cast<std::size_t>(n) != inst.assets.size())
    fail(origin, "field 'n': value " + std::to_string(static_cast<long long>(n)) +
                     " does not match " + std::to_string(inst.assets.size()) + " assets");

  if (!j.contains("target")) fail(origin, "missing field 'target'");
  inst.target = parse_return(j.at("target"), "target", origin);
  return inst;
}

std::string serialize_instance(const PortfolioInstance& inst) {
  if (inst.distribution.kind() != ScalarDistribution::Kind::standard_normal)
    throw std::invalid_argument("serialize_instance: only standard_normal distributions are serializable");
  ordered_json j;
  j["n"] = inst.assets.size();
  j["budget"] = inst.budget;
  j["distribution"] = ordered_json{{"type", "standard_normal"}};
  ordered_json assets = ordered_json::array();
  for (std::size_t i = 0; i < inst.assets.size(); ++i) {
    ordered_json a = return_to_json(inst.assets[i]);
    a["U"] = inst.upper_bounds.at(i);
    assets.push_back(std::move(a));
  }
  j["assets"] = std::move(assets);
  j["target"] = return_to_json(inst.target);
  return j.dump(2) + "\n";
}

PortfolioInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

void save_instance(const PortfolioInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file '" + path.string() + "'");
  out << serialize_instance(inst);
}

}  // namespace possifolio
