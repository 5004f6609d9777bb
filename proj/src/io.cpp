#include "mpsham/io.hpp"

#include <fstream>

#include "mpsham/rng.hpp"

namespace mpsham {

Json tensor_to_json(const MpsTensor& t) {
  Json entries = Json::array();
  for (Index i = 0; i < t.d(); ++i) {
    Json rows = Json::array();
    for (Index al = 0; al < t.D(); ++al) {
      Json row = Json::array();
      for (Index be = 0; be < t.D(); ++be)
        row.push_back({t[i](al, be).real(), t[i](al, be).imag()});
      rows.push_back(std::move(row));
    }
    entries.push_back(std::move(rows));
  }
  return Json{{"d", t.d()}, {"D", t.D()}, {"entries", std::move(entries)}};
}

MpsTensor tensor_from_json(const Json& j) {
  const Index d = j.at("d").get<Index>();
  const Index D = j.at("D").get<Index>();
  if (d < 1 || D < 1) throw std::invalid_argument("tensor_from_json: dims");
  const Json& entries = j.at("entries");
  if (static_cast<Index>(entries.size()) != d)
    throw std::invalid_argument("tensor_from_json: entries extent mismatch");
  MpsTensor t = MpsTensor::zero(d, D);
  for (Index i = 0; i < d; ++i) {
    const Json& rows = entries.at(static_cast<size_t>(i));
    if (static_cast<Index>(rows.size()) != D)
      throw std::invalid_argument("tensor_from_json: alpha extent mismatch");
    for (Index al = 0; al < D; ++al) {
      const Json& row = rows.at(static_cast<size_t>(al));
      if (static_cast<Index>(row.size()) != D)
        throw std::invalid_argument("tensor_from_json: beta extent mismatch");
      for (Index be = 0; be < D; ++be) {
        const Json& pair = row.at(static_cast<size_t>(be));
        t[i](al, be) = Complex(pair.at(0).get<double>(),
                               pair.at(1).get<double>());
      }
    }
  }
  if (!t.all_finite())
    throw std::invalid_argument("tensor_from_json: non-finite entries");
  return t;
}

void save_tensor(const MpsTensor& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << tensor_to_json(t).dump() << "\n";
}

MpsTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  Json j;
  in >> j;
  return tensor_from_json(j);
}

Json report_to_json(const IntersectionReport& rep) {
  Json dims = Json::array();
  for (const auto& [L, dim] : rep.dims) dims.push_back({L, dim});
  Json verdicts = Json::array();
  for (const auto& [L, v] : rep.verdicts) verdicts.push_back({L, v});
  Json j{{"d", rep.d},
         {"D", rep.D},
         {"ell", rep.ell},
         {"dims", std::move(dims)},
         {"int_holds", std::move(verdicts)},
         {"rank_tol", rep.rank_tol},
         {"angle_tol", rep.angle_tol},
         {"injective_on_ell", rep.injective_on_ell},
         {"borderline", rep.borderline},
         {"strategy", rep.strategy}};
  if (rep.seeded) j["seed"] = rep.seed;
  if (!rep.model.empty()) j["model"] = rep.model;
  return j;
}

std::string json_hash(const Json& j) {
  std::uint64_t h = fnv1a64(j.dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace mpsham
