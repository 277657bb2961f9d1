#include "possifolio/reduction.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace possifolio {

namespace {
using ordered_json = nlohmann::ordered_json;
}

ChanceLevels::ChanceLevels(double lambda_, double eta_) : lambda(lambda_), eta(eta_) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("ChanceLevels: lambda must lie in (0,1)");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("ChanceLevels: eta must lie in (0,1]");
}

ReducedLP ReducedLP::without_return_constraint() const {
  ReducedLP lp = *this;
  lp.rhs = -std::numeric_limits<double>::infinity();
  return lp;
}

ReducedLP reduce(const PortfolioInstance& inst, const ChanceLevels& levels, QuantileMode mode,
                 std::string instance_id) {
  const double t_star = inst.distribution.quantile(1.0 - levels.lambda, mode);
  ReducedLP lp;
  lp.c.reserve(inst.assets.size());
  for (const FuzzyRandomReturn& a : inst.assets)
    lp.c.push_back(a.peak_hi_base + t_star * a.peak_shift +
                   a.right_ref.pseudo_inverse(levels.eta) * a.spread_right);
  const FuzzyRandomReturn& tgt = inst.target;
  lp.rhs = tgt.peak_lo_base + t_star * tgt.peak_shift -
           tgt.spread_left * tgt.left_ref.pseudo_inverse(levels.eta);
  lp.budget = inst.budget;
  lp.bounds = inst.upper_bounds;
  lp.provenance = {std::move(instance_id), levels.lambda, levels.eta, mode};
  return lp;
}

std::string quantile_mode_name(QuantileMode mode) {
  return mode == QuantileMode::exact ? "exact" : "paper-2dp";
}

std::string serialize_lp(const ReducedLP& lp) {
  ordered_json j;
  j["c"] = lp.c;
  if (lp.rhs == -std::numeric_limits<double>::infinity())
    j["rhs"] = "-inf";
  else
    j["rhs"] = lp.rhs;
  j["budget"] = lp.budget;
  j["bounds"] = lp.bounds;
  j["provenance"] = ordered_json{{"instance", lp.provenance.instance_id},
                                 {"lambda", lp.provenance.lambda},
                                 {"eta", lp.provenance.eta},
                                 {"quantile_mode", quantile_mode_name(lp.provenance.mode)}};
  return j.dump(2) + "\n";
}

ReducedLP parse_lp(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  auto require = [&](const char* field) -> const ordered_json& {
    if (!j.contains(field))
      throw ParseError(origin + ": missing field '" + std::string(field) + "'");
    return j.at(field);
  };
  ReducedLP lp;
  const auto& c = require("c");
  if (!c.is_array()) throw ParseError(origin + ": field 'c': expected an array");
  lp.c = c.get<std::vector<double>>();
  const auto& rhs = require("rhs");
  if (rhs.is_string() && rhs.get<std::string>() == "-inf")
    lp.rhs = -std::numeric_limits<double>::infinity();
  else if (rhs.is_number())
    lp.rhs = rhs.get<double>();
  else
    throw ParseError(origin + ": field 'rhs': expected a number or \"-inf\"");
  const auto& budget = require("budget");
  if (!budget.is_number()) throw ParseError(origin + ": field 'budget': expected a number");
  lp.budget = budget.get<double>();
  const auto& bounds = require("bounds");
  if (!bounds.is_array()) throw ParseError(origin + ": field 'bounds': expected an array");
  lp.bounds = bounds.get<std::vector<double>>();
  if (lp.bounds.size() != lp.c.size())
    throw ParseError(origin + ": 'bounds' and 'c' must have the same length");
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    lp.provenance.instance_id = p.value("instance", std::string{});
    lp.provenance.lambda = p.value("lambda", 0.0);
    lp.provenance.eta = p.value("eta", 0.0);
    lp.provenance.mode =
        p.value("quantile_mode", std::string{"exact"}) == "paper-2dp" ? QuantileMode::rounded_2dp
                                                                      : QuantileMode::exact;
  }
  return lp;
}

ReducedLP load_lp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open LP file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lp(buf.str(), path.string());
}

void save_lp(const ReducedLP& lp, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write LP file '" + path.string() + "'");
  out << serialize_lp(lp);
}

}  // namespace possifolio
