#include "mprp/solution.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace mprp {

double route_reward(const Route& r) {
  double total = 0.0;
  for (const Visit& v : r.visits) total += v.q;
  return total;
}

double route_cost(const Route& r, const Instance& inst) {
  if (r.visits.empty()) return 0.0;
  double cost = distance(inst.depot, inst.site(r.visits.front().site).pos());
  for (std::size_t i = 1; i < r.visits.size(); ++i)
    cost += distance(inst.site(r.visits[i - 1].site).pos(),
                     inst.site(r.visits[i].site).pos());
  cost += distance(inst.site(r.visits.back().site).pos(), inst.depot);
  return cost;
}

double route_profit(const Route& r, const Instance& inst) {
  return route_reward(r) - route_cost(r, inst);
}

double profit(const Solution& sol, const Instance& inst) {
  double total = 0.0;
  for (const Route& r : sol.routes) total += route_profit(r, inst);
  return total;
}

std::vector<ConstraintViolation> check_feasibility(const Solution& sol,
                                                   const Instance& inst) {
  std::vector<ConstraintViolation> out;
  auto add = [&](int c, int vehicle, int site, std::string detail) {
    out.push_back({c, vehicle, site, std::move(detail)});
  };

  std::map<int, int> owner;  // site id -> vehicle of first occurrence
  for (const Route& r : sol.routes) {
    double load = 0.0;
    const Site* prev = nullptr;
    double prev_t = 0.0;
    for (const Visit& v : r.visits) {
      const Site* s = inst.find_site(v.site);
      if (!s) {
        add(0, r.vehicle, v.site, "unknown site id");
        continue;
      }
      // (7) uniqueness across the whole solution (duplicates within one
      // route violate single-visit semantics just the same).
      auto [it, fresh] = owner.emplace(v.site, r.vehicle);
      if (!fresh)
        add(7, r.vehicle, v.site,
            "site also visited by vehicle " + std::to_string(it->second));
      // (4) time window
      if (v.t < s->e - kTimeTol || v.t > s->l + kTimeTol)
        add(4, r.vehicle, v.site, "visit time outside window");
      // (5) travel-time lower bound
      const double leg = prev ? distance(prev->pos(), s->pos())
                              : distance(inst.depot, s->pos());
      const double gap = prev ? v.t - prev_t : v.t;
      if (gap < leg - kTimeTol)
        add(5, r.vehicle, v.site, "arrival earlier than travel time allows");
      // (6) production
      if (v.t >= 0.0 && std::abs(v.q - supply_at(*s, v.t)) > kQuantityTol)
        add(6, r.vehicle, v.site, "collected quantity does not match supply");
      if (v.t < 0.0) add(4, r.vehicle, v.site, "negative visit time");
      load += v.q;
      prev = s;
      prev_t = v.t;
    }
    // (3) capacity
    if (load > inst.Q + kQuantityTol)
      add(3, r.vehicle, 0, "route load exceeds capacity");
  }
  return out;
}

Solution parse_solution(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Solution sol;
  for (const auto& rj : j.at("routes")) {
    Route r;
    r.vehicle = rj.at("vehicle").get<int>();
    for (const auto& vj : rj.at("visits"))
      r.visits.push_back({vj.at("site").get<int>(), vj.at("t").get<double>(),
                          vj.at("q").get<double>()});
    sol.routes.push_back(std::move(r));
  }
  return sol;
}

std::string solution_to_json(const Solution& sol, const Instance& inst) {
  nlohmann::ordered_json j;
  j["routes"] = nlohmann::ordered_json::array();
  for (const Route& r : sol.routes) {
    nlohmann::ordered_json rj;
    rj["vehicle"] = r.vehicle;
    rj["visits"] = nlohmann::ordered_json::array();
    for (const Visit& v : r.visits) {
      nlohmann::ordered_json vj;
      vj["site"] = v.site;
      vj["t"] = v.t;
      vj["q"] = v.q;
      rj["visits"].push_back(vj);
    }
    j["routes"].push_back(rj);
  }
  const auto violations = check_feasibility(sol, inst);
  nlohmann::ordered_json meta;
  meta["profit"] = profit(sol, inst);
  meta["feasible"] = violations.empty();
  meta["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    nlohmann::ordered_json vj;
    vj["constraint"] = v.constraint;
    vj["vehicle"] = v.vehicle;
    vj["site"] = v.site;
    vj["detail"] = v.detail;
    meta["violations"].push_back(vj);
  }
  j["meta"] = meta;
  return j.dump(2) + "\n";
}

void save_solution(const Solution& sol, const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << solution_to_json(sol, inst);
}

}  // namespace mprp
