#include <gtest/gtest.h>

#include "superkern/io.hpp"

using namespace superkern;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e.what();
    }
    return "";
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("superkern-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Spec, RoundTripOfBuiltins) {
    for (auto g : {osp12(3), make_builtin("gl", 1, 1, 5), make_builtin("sl", 2, 1, 3)}) {
        const json j = spec_json(g->to_data());
        SuperAlgebra back(parse_spec(j.dump(2)));
        ASSERT_EQ(back.dim(), g->dim());
        for (std::size_t i = 0; i < g->dim(); ++i) {
            EXPECT_EQ(back.basis_name(i), g->basis_name(i));
            for (std::size_t k = 0; k < g->dim(); ++k) EXPECT_EQ(back.bracket(i, k), g->bracket(i, k));
        }
        EXPECT_TRUE(validate(back).ok());
        EXPECT_EQ(spec_json(back.to_data()).dump(), j.dump());
    }
}

TEST(Spec, OneSidedBracketIsCompleted) {
    // heisenberg-like: [x, y] = z; [y, x] filled in by antisymmetry
    auto d = parse_spec(R"({"p": 5, "even_basis": ["x", "y", "z"],
        "brackets": {"0,1": [[1, 2]]}, "p_map": {"0": [], "1": [], "2": []}})");
    EXPECT_EQ(d.brackets[1][0][2].v, 4u);
    // odd pair: symmetric
    auto e = parse_spec(R"({"p": 3, "even_basis": ["c"], "odd_basis": ["a", "b"],
        "brackets": {"1,2": [[1, 0]]}, "p_map": {"0": []}})");
    EXPECT_EQ(e.brackets[2][1][0].v, 1u);
    EXPECT_TRUE(validate(SuperAlgebra(e)).ok());
}

TEST(Spec, Diagnostics) {
    EXPECT_EQ(error_of("{\n  \"p\": 3,\n  \"even_basis\": [\"x\"\n}"), "line 4, column 1: JSON syntax error");
    EXPECT_NE(error_of(R"({"p": 3, "even_basis": ["x"]})").find("field 'p_map': missing"), std::string::npos);
    EXPECT_NE(error_of(R"({"p": 4, "even_basis": ["x"], "p_map": {}})").find("field 'p': must be an odd prime"), std::string::npos);
    const auto e = error_of("{\"p\": 3,\n \"even_basis\": [\"x\"],\n \"p_map\": {\"0\": [[1, 0]]},\n \"brackets\": {\"0,0\": [[1, 3]]}}");
    EXPECT_NE(e.find("line 4"), std::string::npos) << e;
    EXPECT_NE(e.find("brackets.0,0"), std::string::npos) << e;
    EXPECT_NE(error_of(R"({"p": 3, "even_basis": ["x"], "p_map": {"0": [["a", 0]]}})").find("expected an integer"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"p": 3, "even_basis": ["x"], "odd_basis": ["y"], "p_map": {"0": [], "1": []}})")
                  .find("even elements only"),
              std::string::npos);
}

TEST(Serialize, ElementsAndModules) {
    auto g = osp12(3);
    Envelope U(g);
    auto j = element_json(U, U.xi("h"));
    EXPECT_EQ(j["text"], U.format(U.xi("h")));
    EXPECT_EQ(j["terms"].size(), U.xi("h").size());
    auto V = baby_verma(g, osp_chi1(*g), lambda_set(*g, osp_chi1(*g)).weights[0]);
    auto r = rep_json(V);
    EXPECT_EQ(r["dim"], 6);
    EXPECT_EQ(r["field"]["degree"], 2);
    EXPECT_EQ(r["action"]["h"].size(), 6u);
    EXPECT_EQ(r["action"]["h"][0][0].size(), 2u);  // coefficient array over F_9
}

TEST(Cache, StoreLoadRoundTrip) {
    TempDir t;
    ResultCache c(t.path);
    const json spec = spec_json(osp12(3)->to_data());
    const auto k = ResultCache::key(spec, "center", json{{"degree", 4}});
    std::string out;
    EXPECT_EQ(c.load(k, out), ResultCache::Status::Miss);
    c.store(k, "{\"x\":1}", 0.5);
    EXPECT_EQ(c.load(k, out), ResultCache::Status::Hit);
    EXPECT_EQ(out, "{\"x\":1}");
    EXPECT_EQ(c.keys(), std::vector<std::string>{k});
    for (auto& e : fs::directory_iterator(t.path)) EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos);
}

TEST(Cache, StaleVersionIsAMiss) {
    const json spec = spec_json(osp12(3)->to_data());
    EXPECT_NE(ResultCache::key(spec, "locus", {}), ResultCache::key(spec, "locus", {}, "superkern-0.0.0"));
    EXPECT_NE(ResultCache::key(spec, "locus", {}), ResultCache::key(spec, "skew", {}));
    TempDir t;
    ResultCache c(t.path);
    c.store(ResultCache::key(spec, "locus", {}, "old"), "{}");
    std::string out;
    EXPECT_EQ(c.load(ResultCache::key(spec, "locus", {}), out), ResultCache::Status::Miss);
}

TEST(Cache, CorruptionIsEvicted) {
    TempDir t;
    ResultCache c(t.path);
    c.store("abc", "{\"v\":2}");
    {
        std::ofstream f(t.path / "abc.json", std::ios::app);
        f << " ";
    }
    std::string out;
    EXPECT_EQ(c.load("abc", out), ResultCache::Status::Corrupt);
    EXPECT_FALSE(fs::exists(t.path / "abc.json"));
    EXPECT_EQ(c.load("abc", out), ResultCache::Status::Miss);
}

TEST(Cache, EnvironmentRoot) {
    ::setenv(ResultCache::kEnvVar, "/tmp/somewhere-else", 1);
    EXPECT_EQ(ResultCache::from_environment().root(), fs::path("/tmp/somewhere-else"));
    ::unsetenv(ResultCache::kEnvVar);
    EXPECT_EQ(ResultCache::from_environment().root(), fs::path(".superkern-cache"));
}
