#include "mprp/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace mprp {

namespace {
constexpr double kIntTol = 1e-9;

bool is_integral(double v) { return std::abs(v - std::round(v)) <= kIntTol; }
}  // namespace

const Site& Instance::site(int id) const {
  const Site* s = find_site(id);
  if (!s) throw std::out_of_range("unknown site id " + std::to_string(id));
  return *s;
}

const Site* Instance::find_site(int id) const {
  for (const Site& s : sites)
    if (s.id == id) return &s;
  return nullptr;
}

double Instance::total_q_max() const {
  double total = 0.0;
  for (const Site& s : sites) total += s.q_max();
  return total;
}

double supply_at(const Site& s, double t) {
  if (t < 0.0) throw std::invalid_argument("supply_at: negative time");
  if (t < s.e || t > s.l) return 0.0;
  if (s.constant_supply) return s.q_max();
  return s.rho * (t - s.e);
}

bool has_errors(const std::vector<ValidationIssue>& issues) {
  for (const auto& v : issues)
    if (v.severity == Severity::Error) return true;
  return false;
}

std::vector<ValidationIssue> validate(const Instance& inst, bool mprp_mode) {
  std::vector<ValidationIssue> out;
  auto err = [&](std::string msg, std::vector<int> ids = {}) {
    out.push_back({Severity::Error, std::move(msg), std::move(ids)});
  };
  auto warn = [&](std::string msg, std::vector<int> ids = {}) {
    out.push_back({Severity::Warning, std::move(msg), std::move(ids)});
  };

  if (inst.m < 1) err("fleet size m must be positive");
  if (inst.Q <= 0.0) err("capacity Q must be positive");
  if (inst.T < 1) err("horizon T must be positive");
  if (inst.alpha <= 1.0) err("discrepancy bound alpha must exceed 1");

  std::unordered_set<int> seen;
  for (const Site& s : inst.sites) {
    if (!seen.insert(s.id).second)
      err("duplicate site id", {s.id});
    if (s.e < 0 || s.l > inst.T || s.e >= s.l)
      err("time window must satisfy 0 <= e < l <= T", {s.id});
    if (s.rho < 0.0) err("production rate must be nonnegative", {s.id});
  }

  // Pairwise discrepancy: q_max(i) <= alpha * q_max(j) for all i, j.
  if (inst.alpha > 1.0 && inst.sites.size() >= 2) {
    const Site* lo = nullptr;
    const Site* hi = nullptr;
    for (const Site& s : inst.sites) {
      if (!lo || s.q_max() < lo->q_max()) lo = &s;
      if (!hi || s.q_max() > hi->q_max()) hi = &s;
    }
    if (hi->q_max() > inst.alpha * lo->q_max() + kIntTol)
      err("supply discrepancy exceeds alpha", {hi->id, lo->id});
  }

  if (!inst.sites.empty() && inst.Q >= inst.total_q_max() - kIntTol)
    warn("capacity constraint is vacuous: Q >= total q_max");

  if (mprp_mode || inst.constant_supply) {
    if (!is_integral(inst.Q)) err("Q must be integral in mprp mode");
    for (const Site& s : inst.sites)
      if (!is_integral(s.q_max()))
        err("q_max must be integral in mprp mode", {s.id});
  }
  return out;
}

Instance parse_instance(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Instance inst;
  auto depot = j.at("depot");
  inst.depot = {depot.at(0).get<double>(), depot.at(1).get<double>()};
  inst.m = j.at("m").get<int>();
  inst.Q = j.at("Q").get<double>();
  inst.T = j.at("T").get<int>();
  inst.alpha = j.at("alpha").get<double>();
  inst.constant_supply = j.value("constant_supply", false);
  for (const auto& sj : j.at("sites")) {
    Site s;
    s.id = sj.at("id").get<int>();
    s.x = sj.at("x").get<double>();
    s.y = sj.at("y").get<double>();
    s.rho = sj.at("rho").get<double>();
    s.e = sj.at("e").get<int>();
    s.l = sj.at("l").get<int>();
    s.constant_supply = inst.constant_supply;
    inst.sites.push_back(s);
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["depot"] = {inst.depot.x, inst.depot.y};
  j["m"] = inst.m;
  j["Q"] = inst.Q;
  j["T"] = inst.T;
  j["alpha"] = inst.alpha;
  if (inst.constant_supply) j["constant_supply"] = true;
  j["sites"] = nlohmann::ordered_json::array();
  for (const Site& s : inst.sites) {
    nlohmann::ordered_json sj;
    sj["id"] = s.id;
    sj["x"] = s.x;
    sj["y"] = s.y;
    sj["rho"] = s.rho;
    sj["e"] = s.e;
    sj["l"] = s.l;
    j["sites"].push_back(sj);
  }
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(inst);
}

}  // namespace mprp
