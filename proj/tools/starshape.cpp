// starshape command-line driver.
//
// Exit codes: 0 all checks pass, 1 computation or verdict failure,
// 2 usage or input error.

#include "starshape/starshape.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

using namespace starshape;

namespace {

struct Flags {
  std::size_t n = 0;
  std::size_t s = 0;
  unsigned m = 0;
  unsigned m_max = 0;
  std::string mode = "vandermonde";
  std::uint64_t seed = 0x5eed;
  std::int64_t coeff_bound = GinOptions{}.coeff_bound;
  std::string points;
  std::string scenario;
  std::string expect_vertices;
  std::string json, csv, svg;
  std::string cache;
  bool no_cache = false;
};

GinOptions gin_options(const Flags& f) {
  GinOptions opt;
  opt.seed = f.seed;
  opt.coeff_bound = f.coeff_bound;
  return opt;
}

GinProvider provider(const Flags& f) {
  const GinOptions opt = gin_options(f);
  std::string dir = f.cache;
  if (dir.empty())
    if (const char* env = std::getenv("STARSHAPE_CACHE")) dir = env;
  if (f.no_cache || dir.empty()) return default_provider(opt);
  GinCache cache(dir);
  return [cache, opt](const FatPointScheme& sch) { return cache.get(sch, opt); };
}

StarMode star_mode(const Flags& f) {
  if (f.mode == "vandermonde") return VandermondeMode{};
  return SeededMode{mix_seed(f.seed), f.coeff_bound};
}

std::vector<Rational> parse_vertices(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(parse_rational(piece));
    } catch (const InputError& e) {
      throw InputError("--expect-vertices: " + std::string(e.what()));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

FatPointScheme base_scheme(const Flags& f) {
  if (!f.points.empty() && !f.scenario.empty()) throw InputError("give either --points or --scenario, not both");
  if (!f.scenario.empty()) {
    if (f.scenario != "conic") throw InputError("unknown scenario '" + f.scenario + "'");
    return conic_scheme(1);
  }
  if (f.points.empty()) throw InputError("--points FILE or --scenario is required");
  return load_points(f.points).with_multiplicity(1);
}

void print_rows(const InvariantReport& rep) {
  const bool with_area = !rep.rows.empty() && rep.rows.front().area;
  std::cout << std::setw(4) << "m" << std::setw(7) << "alpha";
  for (std::size_t i = 1; i <= rep.n; ++i) std::cout << std::setw(6) << ("t_" + std::to_string(i));
  std::cout << std::setw(6) << "reg" << std::setw(10) << "colength" << std::setw(9) << "alpha/m" << std::setw(8)
            << "reg/m";
  if (with_area) std::cout << std::setw(10) << "area";
  std::cout << "\n";
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    const auto& r = rep.rows[k];
    std::cout << std::setw(4) << r.m << std::setw(7) << r.alpha;
    for (auto t : r.t) std::cout << std::setw(6) << t;
    std::cout << std::setw(6) << r.reg << std::setw(10) << r.colength << std::setw(9)
              << to_string(rep.waldschmidt.values[k]) << std::setw(8) << to_string(rep.asreg.values[k]);
    if (r.area) std::cout << std::setw(10) << to_string(*r.area);
    std::cout << "\n";
  }
  std::cout << "waldschmidt upper bound: " << to_string(rep.waldschmidt.min()) << "\n";
  std::cout << "asreg estimate: " << to_string(rep.asreg.min()) << "\n";
}

int print_verdicts(const InvariantReport& rep) {
  for (const auto& [name, ok] : rep.verdicts) std::cout << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  for (const auto& note : rep.notes) std::cout << "note: " << note << "\n";
  return rep.passed() ? 0 : 1;
}

void write_report(const Flags& f, const InvariantReport& rep) {
  if (!f.json.empty()) write_text(f.json, report_to_json(rep).dump(2) + "\n");
  if (!f.csv.empty()) write_text(f.csv, rows_to_csv(rep.n, rep.rows));
}

int cmd_star(const Flags& f) {
  if (f.s < f.n) throw InputError("need s >= n (got s=" + std::to_string(f.s) + ", n=" + std::to_string(f.n) + ")");
  const auto star = build_star(f.n, f.s, star_mode(f));
  const auto res = provider(f)(star.scheme(f.m));
  const auto row = invariant_row(res);
  std::cout << "star(" << f.n << "," << f.s << ") m=" << f.m << ": " << res.num_points << " points\n";
  std::cout << "gin generators:";
  for (const auto& g : ordered_generators(res.artinian)) std::cout << " " << g.to_string();
  std::cout << "\nstop degree " << res.stop_degree << ", colength " << res.colength << ", alpha " << row.alpha
            << ", reg " << row.reg << "\n";
  if (!f.json.empty()) write_text(f.json, gin_to_json(res).dump(2) + "\n");
  if (!f.csv.empty()) write_text(f.csv, csv_header(res.n) + csv_row(row));
  if (!f.svg.empty()) write_text(f.svg, shape_to_svg(scaled(shape_of(res), res.m), w_simplex(f.n, f.s)));
  return gin_invariant_violations(res).empty() ? 0 : 1;
}

int cmd_verify(const Flags& f) {
  if (f.s < f.n) throw InputError("need s >= n");
  if (f.m_max < f.n) throw InputError("--m-max must be at least n (got " + std::to_string(f.m_max) + ")");
  const GinProvider base = provider(f);
  std::optional<GinResult> last;
  const GinProvider keep = [&](const FatPointScheme& sch) {
    last = base(sch);
    return *last;
  };
  const auto rep = verify_theorem(f.n, f.s, f.m_max, star_mode(f), keep);
  std::cout << "star(" << f.n << "," << f.s << "), m = 1.." << f.m_max << "\n";
  print_rows(rep);
  write_report(f, rep);
  if (!f.svg.empty()) write_text(f.svg, shape_to_svg(scaled(shape_of(*last), last->m), w_simplex(f.n, f.s)));
  return print_verdicts(rep);
}

int cmd_custom(const Flags& f) {
  const auto base = base_scheme(f);
  std::optional<std::vector<Rational>> expect;
  if (!f.expect_vertices.empty()) expect = parse_vertices(f.expect_vertices);
  const GinProvider inner = provider(f);
  std::optional<GinResult> last;
  const GinProvider keep = [&](const FatPointScheme& sch) {
    last = inner(sch);
    return *last;
  };
  const auto rep = analyze_points(base, f.m_max, expect, keep);
  std::cout << base.points().size() << " points in P^" << base.dim() << ", m = 1.." << f.m_max << "\n";
  print_rows(rep);
  write_report(f, rep);
  if (!f.svg.empty()) {
    std::optional<SimplexW> w;
    if (expect) w = simplex_from_axes(*expect);
    write_text(f.svg, shape_to_svg(scaled(shape_of(*last), last->m), w));
  }
  return print_verdicts(rep);
}

int cmd_invariants(const Flags& f) {
  const bool star = f.n > 0 || f.s > 0;
  if (star == (!f.points.empty() || !f.scenario.empty()))
    throw InputError("give either --n and --s or a point set (--points/--scenario)");
  InvariantReport rep;
  if (star) {
    if (f.n < 1 || f.s < f.n) throw InputError("need s >= n >= 1");
    rep = analyze_points(build_star(f.n, f.s, star_mode(f)).scheme(1), f.m_max, std::nullopt, provider(f));
    rep.s = f.s;
  } else {
    rep = analyze_points(base_scheme(f), f.m_max, std::nullopt, provider(f));
  }
  print_rows(rep);
  write_report(f, rep);
  return print_verdicts(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic initial ideals of symbolic powers of point sets and their limiting shapes"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--mode", f.mode, "star configuration family")->check(CLI::IsMember({"vandermonde", "seeded"}));
    sub->add_option("--seed", f.seed, "master seed for coordinate changes and seeded hyperplanes");
    sub->add_option("--coeff-bound", f.coeff_bound, "entries of random matrices lie in [-N, N]")->check(CLI::Range(2, 1 << 30));
    sub->add_option("--json", f.json, "write JSON output");
    sub->add_option("--csv", f.csv, "write CSV output");
    sub->add_option("--cache", f.cache, "cache directory (default $STARSHAPE_CACHE)");
    sub->add_flag("--no-cache", f.no_cache, "ignore the cache");
  };

  auto* star = app.add_subcommand("star", "gin of one symbolic power of a star configuration");
  star->add_option("--n", f.n, "dimension of projective space")->required()->check(CLI::PositiveNumber);
  star->add_option("--s", f.s, "number of hyperplanes")->required()->check(CLI::PositiveNumber);
  star->add_option("--m", f.m, "multiplicity")->required()->check(CLI::PositiveNumber);
  star->add_option("--svg", f.svg, "write the scaled shape as SVG (n = 2)");
  common(star);

  auto* verify = app.add_subcommand("verify", "check the predicted limiting simplex for m = 1..m_max");
  verify->add_option("--n", f.n, "dimension of projective space")->required()->check(CLI::PositiveNumber);
  verify->add_option("--s", f.s, "number of hyperplanes")->required()->check(CLI::PositiveNumber);
  verify->add_option("--m-max", f.m_max, "largest multiplicity")->required()->check(CLI::PositiveNumber);
  verify->add_option("--svg", f.svg, "write the shape for m_max as SVG (n = 2)");
  common(verify);

  auto* custom = app.add_subcommand("custom", "same pipeline for an arbitrary point set");
  custom->add_option("--points", f.points, "point-scheme JSON file");
  custom->add_option("--scenario", f.scenario, "built-in point set")->check(CLI::IsMember({"conic"}));
  custom->add_option("--m-max", f.m_max, "largest multiplicity")->required()->check(CLI::PositiveNumber);
  custom->add_option("--expect-vertices", f.expect_vertices, "expected axis vertices a1,...,an");
  custom->add_option("--svg", f.svg, "write the shape for m_max as SVG (n = 2)");
  common(custom);

  auto* inv = app.add_subcommand("invariants", "alpha, Waldschmidt and regularity tables");
  inv->add_option("--n", f.n, "dimension of projective space")->check(CLI::PositiveNumber);
  inv->add_option("--s", f.s, "number of hyperplanes")->check(CLI::PositiveNumber);
  inv->add_option("--points", f.points, "point-scheme JSON file");
  inv->add_option("--scenario", f.scenario, "built-in point set")->check(CLI::IsMember({"conic"}));
  inv->add_option("--m-max", f.m_max, "largest multiplicity")->required()->check(CLI::PositiveNumber);
  common(inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (star->parsed()) return cmd_star(f);
    if (verify->parsed()) return cmd_verify(f);
    if (custom->parsed()) return cmd_custom(f);
    return cmd_invariants(f);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
