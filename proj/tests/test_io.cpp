#include "starshape/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace starshape;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("starshape_io_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(GinJson, Golden) {
  const auto j = gin_to_json(compute_gin(build_star(2, 3).scheme(2)));
  EXPECT_EQ(j.at("generators"), nlohmann::json::parse("[[3,0],[2,2],[1,3],[0,4]]"));
  EXPECT_EQ(j.at("min_generators"), nlohmann::json::parse("[[3,0,0],[2,2,0],[1,3,0],[0,4,0]]"));
  EXPECT_EQ(j.at("colength"), "9");
  EXPECT_EQ(j.at("alpha"), 3);
  EXPECT_EQ(j.at("reg"), 4);
  EXPECT_EQ(j.at("t"), nlohmann::json::parse("[3,4]"));
  EXPECT_EQ(j.at("scaled_intercepts"), nlohmann::json::parse(R"(["3/2","2"])"));
  EXPECT_EQ(j.at("area"), "3/2");
  EXPECT_EQ(j.at("hf_table").back().at("hf"), 9);
}

TEST(GinJson, RoundTrip) {
  for (auto [n, s, m] : {std::tuple{2, 4, 3}, {3, 4, 2}}) {
    const auto res = compute_gin(build_star(n, s).scheme(m));
    const auto back = gin_from_json(nlohmann::json::parse(gin_to_json(res).dump()));
    EXPECT_EQ(back.min_generators, res.min_generators);
    EXPECT_EQ(back.artinian, res.artinian);
    EXPECT_EQ(back.hf_table, res.hf_table);
    EXPECT_EQ(back.colength, res.colength);
    EXPECT_EQ(back.seeds_used, res.seeds_used);
    EXPECT_EQ(gin_to_json(back), gin_to_json(res));
  }
}

TEST(GinJson, RejectsInconsistentDocuments) {
  auto j = gin_to_json(compute_gin(build_star(2, 3).scheme(2)));
  auto wrong_colength = j;
  wrong_colength["colength"] = "10";
  EXPECT_THROW(gin_from_json(wrong_colength), InputError);
  auto not_borel = j;
  not_borel["generators"] = nlohmann::json::parse("[[4,0],[2,2],[1,3],[0,3]]");
  not_borel["min_generators"] = nlohmann::json::parse("[[4,0,0],[2,2,0],[1,3,0],[0,3,0]]");
  EXPECT_THROW(gin_from_json(not_borel), InputError);
  auto missing = j;
  missing.erase("hf_table");
  EXPECT_THROW(gin_from_json(missing), InputError);
  auto version = j;
  version["version"] = 99;
  EXPECT_THROW(gin_from_json(version), InputError);
}

TEST(ReportJson, Fields) {
  const auto rep = verify_theorem(2, 3, 2, VandermondeMode{});
  const auto j = report_to_json(rep);
  EXPECT_EQ(j.at("n"), 2);
  EXPECT_EQ(j.at("s"), 3);
  EXPECT_EQ(j.at("rows").at(0), nlohmann::json::parse(R"({"m":1,"alpha":2,"t":[2,2],"reg":2,"colength":3,"area":"2"})"));
  EXPECT_EQ(j.at("waldschmidt_min"), "3/2");
  EXPECT_EQ(j.at("asreg_estimate"), "2");
  EXPECT_EQ(j.at("verdicts").at("V1"), true);
  EXPECT_FALSE(report_to_json(analyze_points(conic_scheme(), 1, std::nullopt)).contains("s"));
}

TEST(Csv, Rows) {
  const auto rep = verify_theorem(2, 3, 2, VandermondeMode{});
  EXPECT_EQ(rows_to_csv(2, rep.rows), "m,alpha,t_1,t_2,reg,colength\n1,2,2,2,2,3\n2,3,3,4,4,9\n");
  EXPECT_EQ(csv_header(3), "m,alpha,t_1,t_2,t_3,reg,colength\n");
}

TEST(Svg, TwoVariablesOnly) {
  const auto sh = scaled(shape_of(compute_gin(build_star(2, 3).scheme(2))), 2);
  const auto svg = shape_to_svg(sh, w_simplex(2, 3));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("polyline"), std::string::npos);
  EXPECT_EQ(shape_to_svg(sh, std::nullopt).find("id=\"W\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"W\""), std::string::npos);
  EXPECT_THROW(shape_to_svg(Shape(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), std::nullopt), InputError);
}

TEST(AtomicWrite, ReplacesWholeFile) {
  const auto d = fresh_dir("atomic");
  const auto p = d / "out.txt";
  write_file_atomic(p, "first version, longer\n");
  write_file_atomic(p, "second\n");
  EXPECT_EQ(slurp(p), "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d)) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(write_file_atomic(d / "missing" / "x.txt", "x"), InputError);
}

TEST(Cache, HitAndKeying) {
  const auto d = fresh_dir("cache");
  const GinCache cache(d);
  const auto sch = build_star(2, 4).scheme(2);
  GinOptions opt;
  EXPECT_FALSE(cache.load(sch, opt));
  const auto res = cache.get(sch, opt);
  ASSERT_TRUE(fs::exists(cache.path_for(sch, opt)));
  const auto hit = cache.load(sch, opt);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->min_generators, res.min_generators);
  EXPECT_EQ(hit->seeds_used, res.seeds_used);

  GinOptions other = opt;
  other.seed = 77;
  EXPECT_NE(cache.path_for(sch, opt), cache.path_for(sch, other));
  EXPECT_FALSE(cache.load(sch, other));
  EXPECT_NE(cache.path_for(sch, opt), cache.path_for(sch.with_multiplicity(3), opt));
}

TEST(Cache, CorruptEntriesAreRecomputed) {
  const auto d = fresh_dir("corrupt");
  const GinCache cache(d);
  const auto sch = build_star(2, 3).scheme(2);
  const GinOptions opt;
  const auto good = cache.get(sch, opt);
  const auto p = cache.path_for(sch, opt);

  std::ofstream(p) << "{ truncated";
  EXPECT_FALSE(cache.load(sch, opt));
  EXPECT_EQ(cache.get(sch, opt).min_generators, good.min_generators);
  EXPECT_TRUE(cache.load(sch, opt));

  auto j = nlohmann::json::parse(slurp(p));
  j["result"]["colength"] = "8";
  std::ofstream(p) << j.dump();
  EXPECT_FALSE(cache.load(sch, opt));
  EXPECT_EQ(cache.get(sch, opt).colength, 9u);
}

TEST(Fnv, KnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}
