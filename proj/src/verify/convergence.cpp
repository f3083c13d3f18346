#include "duhamel/verify/convergence.hpp"

#include <cmath>
#include <sstream>

#include "duhamel/error.hpp"
#include "json.hpp"

namespace duhamel::verify {

void ConvergenceReport::write_jsonl(std::ostream& os) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    nlohmann::ordered_json j;
    j["study"] = name;
    j["resolution"] = points[i].resolution;
    j["linf"] = points[i].linf;
    j["l2"] = points[i].l2;
    if (i > 0) {
      j["order_linf"] = order_linf[i - 1];
      j["order_l2"] = order_l2[i - 1];
    }
    os << j.dump() << '\n';
  }
  nlohmann::ordered_json s;
  s["study"] = name;
  s["non_monotone"] = non_monotone;
  s["saturated"] = saturated;
  os << s.dump() << '\n';
}

std::string ConvergenceReport::summary() const {
  std::ostringstream os;
  os << name << ":";
  for (std::size_t i = 0; i < order_linf.size(); ++i) {
    os << " " << points[i].resolution << "->" << points[i + 1].resolution << " order "
       << order_linf[i];
  }
  if (non_monotone) os << " [non-monotone]";
  if (saturated) os << " [saturated]";
  return os.str();
}

ConvergenceReport convergence_study(const std::string& name,
                                    const std::vector<std::size_t>& resolutions,
                                    const std::function<ErrorNorms(std::size_t)>& error_at,
                                    double floor) {
  if (resolutions.size() < 3) throw ConfigError("convergence_study: need >= 3 resolutions");
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    if (resolutions[i] != 2 * resolutions[i - 1]) {
      throw ConfigError("convergence_study: each resolution must double the previous");
    }
  }
  ConvergenceReport r;
  r.name = name;
  for (std::size_t n : resolutions) {
    const auto e = error_at(n);
    r.points.push_back({n, e.linf, e.l2});
  }
  for (std::size_t i = 0; i + 1 < r.points.size(); ++i) {
    const auto& a = r.points[i];
    const auto& b = r.points[i + 1];
    r.order_linf.push_back(std::log2(a.linf / b.linf));
    r.order_l2.push_back(std::log2(a.l2 / b.l2));
    if (b.linf > a.linf) r.non_monotone = true;
    if (b.linf <= floor || a.linf <= floor) r.saturated = true;
  }
  return r;
}

}  // namespace duhamel::verify
