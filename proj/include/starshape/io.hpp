/**
 * @file io.hpp
 * @brief JSON, CSV and SVG output and the on-disk gin cache.
 *
 * Rationals are written as "p/q" strings (integers as "p").
 */
#pragma once

#include "starshape/gin.hpp"
#include "starshape/invariants.hpp"
#include "starshape/scheme.hpp"
#include "starshape/shape.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

namespace starshape {

inline constexpr int kFormatVersion = 1;

inline nlohmann::json exponent_json(const ExponentVector& e) { return e.exponents(); }

/// Generators by degree, then descending revlex within a degree.
inline std::vector<ExponentVector> ordered_generators(const MonomialIdeal& j) {
  auto gens = j.generators();
  std::sort(gens.begin(), gens.end(), [](const ExponentVector& a, const ExponentVector& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : revlex_compare(a, b) > 0;
  });
  return gens;
}

inline nlohmann::json rationals_json(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline nlohmann::json generators_json(const MonomialIdeal& j) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : ordered_generators(j)) out.push_back(exponent_json(g));
  return out;
}

/// Full GinResult plus the derived numbers reported by the star command.
inline nlohmann::json gin_to_json(const GinResult& res) {
  nlohmann::json j;
  j["version"] = kFormatVersion;
  j["n"] = res.n;
  j["m"] = res.m;
  j["num_points"] = res.num_points;
  j["generators"] = generators_json(res.artinian);
  j["min_generators"] = generators_json(res.min_generators);
  j["hf_table"] = nlohmann::json::array();
  for (const auto& r : res.hf_table) j["hf_table"].push_back({{"d", r.d}, {"dim_ideal", r.dim_ideal}, {"hf", r.hf_quotient}});
  j["stop_degree"] = res.stop_degree;
  j["colength"] = std::to_string(res.colength);
  j["seeds"] = {res.seeds_used.first, res.seeds_used.second};
  const auto row = invariant_row(res);
  j["alpha"] = row.alpha;
  j["reg"] = row.reg;
  j["t"] = row.t;
  const Shape sh = scaled(shape_of(res), res.m);
  j["scaled_intercepts"] = rationals_json(all_intercepts(sh));
  if (row.area) j["area"] = to_string(*row.area);
  return j;
}

/// Reads the fields of gin_to_json back and re-checks every invariant.
inline GinResult gin_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kFormatVersion) throw InputError("unsupported gin format version");
    GinResult res;
    res.n = j.at("n").get<std::size_t>();
    res.m = j.at("m").get<unsigned>();
    res.num_points = j.at("num_points").get<std::size_t>();
    std::vector<ExponentVector> art, full;
    for (const auto& g : j.at("generators")) art.emplace_back(g.get<std::vector<unsigned>>());
    for (const auto& g : j.at("min_generators")) full.emplace_back(g.get<std::vector<unsigned>>());
    res.artinian = MonomialIdeal(res.n, std::move(art));
    res.min_generators = MonomialIdeal(res.n + 1, std::move(full));
    for (const auto& r : j.at("hf_table"))
      res.hf_table.push_back({r.at("d").get<unsigned>(), r.at("dim_ideal").get<std::size_t>(), r.at("hf").get<std::size_t>()});
    res.stop_degree = j.at("stop_degree").get<unsigned>();
    res.colength = std::stoull(j.at("colength").get<std::string>());
    res.seeds_used = {j.at("seeds").at(0).get<std::uint64_t>(), j.at("seeds").at(1).get<std::uint64_t>()};
    if (auto bad = gin_invariant_violations(res); !bad.empty()) throw InputError("stored gin is inconsistent: " + bad.front());
    return res;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed gin document: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed gin document: ") + e.what());
  }
}

inline nlohmann::json report_to_json(const InvariantReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  if (rep.s) j["s"] = *rep.s;
  j["num_points"] = rep.num_points;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json row{{"m", r.m}, {"alpha", r.alpha}, {"t", r.t}, {"reg", r.reg}, {"colength", r.colength}};
    if (r.area) row["area"] = to_string(*r.area);
    j["rows"].push_back(row);
  }
  j["verdicts"] = rep.verdicts;
  j["waldschmidt"] = rationals_json(rep.waldschmidt.values);
  j["waldschmidt_min"] = to_string(rep.waldschmidt.min());
  j["asreg"] = rationals_json(rep.asreg.values);
  j["asreg_estimate"] = to_string(rep.asreg.min());
  j["asreg_nonincreasing"] = rep.asreg.nonincreasing();
  j["notes"] = rep.notes;
  return j;
}

inline std::string csv_header(std::size_t n) {
  std::string h = "m,alpha";
  for (std::size_t i = 1; i <= n; ++i) h += ",t_" + std::to_string(i);
  return h + ",reg,colength\n";
}

inline std::string csv_row(const InvariantRow& r) {
  std::string s = std::to_string(r.m) + "," + std::to_string(r.alpha);
  for (auto t : r.t) s += "," + std::to_string(t);
  return s + "," + std::to_string(r.reg) + "," + std::to_string(r.colength) + "\n";
}

inline std::string rows_to_csv(std::size_t n, const std::vector<InvariantRow>& rows) {
  std::string out = csv_header(n);
  for (const auto& r : rows) out += csv_row(r);
  return out;
}

/// Staircase of the scaled shape, its hull chain and the triangle W (n = 2).
inline std::string shape_to_svg(const Shape& sh, const std::optional<SimplexW>& w) {
  if (sh.num_vars() != 2) throw InputError("SVG output is only available for n = 2");
  const auto t = all_intercepts(sh);
  double extent = std::max(t[0].get_d(), t[1].get_d());
  if (w) extent = std::max({extent, w->a[0].get_d(), w->a[1].get_d()});
  extent *= 1.1;
  const double size = 400, margin = 30, k = size / extent;
  auto px = [&](double x) { return margin + x * k; };
  auto py = [&](double y) { return margin + size - y * k; };
  std::ostringstream o;
  o << std::fixed << std::setprecision(3);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\"" << size + 2 * margin
    << "\">\n";
  o << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(extent) << "\" y2=\"" << py(0)
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\"" << py(extent)
    << "\" stroke=\"black\"/>\n";

  auto pts = sh.points();
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  o << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  o << px(0) << "," << py(extent);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i][0].get_d(), y = pts[i][1].get_d();
    o << " " << px(x) << "," << py(i == 0 ? extent : pts[i - 1][1].get_d()) << " " << px(x) << "," << py(y);
  }
  o << " " << px(extent) << "," << py(pts.back()[1].get_d()) << "\"/>\n";

  o << "<polyline fill=\"none\" stroke=\"darkorange\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& p : hull_chain_2d(sh)) {
    o << (first ? "" : " ") << px(p[0].get_d()) << "," << py(p[1].get_d());
    first = false;
  }
  o << "\"/>\n";

  if (w)
    o << "<polygon id=\"W\" fill=\"seagreen\" fill-opacity=\"0.25\" stroke=\"seagreen\" points=\"" << px(0) << "," << py(0) << " "
      << px(w->a[0].get_d()) << "," << py(0) << " " << px(0) << "," << py(w->a[1].get_d()) << "\"/>\n";
  for (const auto& p : sh.points())
    o << "<circle cx=\"" << px(p[0].get_d()) << "\" cy=\"" << py(p[1].get_d()) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  o << "</svg>\n";
  return o.str();
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp." + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move result into '" + path.string() + "'");
  }
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/**
 * One JSON file per GinResult, named by a hash of the points, the
 * multiplicity, the options and the format version. Entries that fail to
 * parse or fail the invariant checks are recomputed and overwritten.
 */
class GinCache {
 public:
  explicit GinCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(const FatPointScheme& sch, const GinOptions& opt) {
    std::ostringstream k;
    k << "starshape-gin-v" << kFormatVersion << "|" << points_to_json(sch) << "|seed=" << opt.seed
      << "|bound=" << opt.coeff_bound << "|attempts=" << opt.max_attempts
      << "|cap=" << (opt.degree_cap ? std::to_string(*opt.degree_cap) : "default");
    return k.str();
  }

  std::filesystem::path path_for(const FatPointScheme& sch, const GinOptions& opt) const {
    std::ostringstream name;
    name << "gin-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key(sch, opt)) << ".json";
    return dir_ / name.str();
  }

  std::optional<GinResult> load(const FatPointScheme& sch, const GinOptions& opt) const {
    const auto p = path_for(sch, opt);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
      const auto j = nlohmann::json::parse(in);
      if (j.at("key").get<std::string>() != key(sch, opt)) return std::nullopt;
      auto res = gin_from_json(j.at("result"));
      if (res.m != sch.multiplicity() || res.n != sch.dim() || res.num_points != sch.points().size()) return std::nullopt;
      return res;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const FatPointScheme& sch, const GinOptions& opt, const GinResult& res) const {
    std::filesystem::create_directories(dir_);
    nlohmann::json j{{"key", key(sch, opt)}, {"result", gin_to_json(res)}};
    write_file_atomic(path_for(sch, opt), j.dump(1) + "\n");
  }

  GinResult get(const FatPointScheme& sch, const GinOptions& opt) const {
    if (auto hit = load(sch, opt)) return *hit;
    auto res = compute_gin(sch, opt);
    store(sch, opt, res);
    return res;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace starshape
