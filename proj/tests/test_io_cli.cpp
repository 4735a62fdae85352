#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "coarse/io.hpp"
#include "fixtures.hpp"

using namespace coarse;
using fixtures::line10;
using fixtures::line10_cover;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& tag) {
        dir = fs::temp_directory_path() / ("coarse_io_" + tag + "_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

int cli(const std::string& args, const std::string& out = "/dev/null") {
    const std::string cmd = std::string(COARSE_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Json, SpaceRoundTrip) {
    auto X = line10();
    auto j = io::to_json(X);
    auto Y = io::space_from_json(io::parse_json(io::dump(j), "space"));
    EXPECT_EQ(io::dump(io::to_json(Y)), io::dump(j));
    for (Index a = 0; a < 10; ++a)
        for (Index b = 0; b < 10; ++b) EXPECT_EQ(X.d(a, b), Y.d(a, b));

    auto R = random_space(12, 3, 50, 9);
    auto R2 = io::space_from_json(io::to_json(R));
    for (Index a = 0; a < 12; ++a)
        for (Index b = 0; b < 12; ++b) EXPECT_EQ(R.d(a, b), R2.d(a, b));
    EXPECT_THROW(io::parse_json("{", "bad"), ValidationError);
    EXPECT_THROW(io::space_from_json(io::parse_json("{\"points\":3}", "bad")), Error);
}

TEST(Json, FamilyPouMapRoundTrip) {
    auto U = line10_cover();
    EXPECT_EQ(io::family_from_json(io::to_json(U), 10), U);
    EXPECT_THROW(io::family_from_json(io::to_json(U), 4), ValidationError);

    auto c = canonical_pou(line10(), U);
    auto phi = io::pou_from_json(io::to_json(c.pou), 10);
    EXPECT_EQ(phi.weights, c.pou.weights);
    EXPECT_EQ(phi.labels, c.pou.labels);

    auto X = share(line10());
    std::vector<Index> t(10);
    for (Index x = 0; x < 10; ++x) t[x] = 9 - x;
    PointMap f(X, X, t);
    auto g = io::map_from_json(io::to_json(f));
    EXPECT_EQ(g.table(), f.table());
}

TEST(Json, InfinityIsAString) {
    EXPECT_EQ(io::number(kInf).dump(), "\"inf\"");
    EXPECT_EQ(io::number(io::number(kInf)), kInf);
    EXPECT_EQ(io::number(2.5).dump(), "2.5");
}

TEST(Csv, Profiles) {
    ScaleProfile empty("x");
    EXPECT_EQ(io::to_csv(empty), "t,value\n");
    EXPECT_TRUE(io::profile_from_csv(io::to_csv(empty)).empty());

    auto p = coarseness_profile(line10(), line10_cover());
    ASSERT_EQ(p.size(), 10u);
    EXPECT_EQ(io::profile_from_csv(io::to_csv(p)), p);

    ScaleProfile q;
    q.push(0.1, 1.0 / 3.0);
    q.push(2.0, kInf);
    auto text = io::to_csv(q);
    EXPECT_NE(text.find(",inf"), std::string::npos);
    EXPECT_EQ(io::profile_from_csv(text), q);

    EXPECT_THROW(io::profile_from_csv("a,b\n"), ValidationError);
    EXPECT_THROW(io::profile_from_csv("t,value\n1,2,3\n"), ValidationError);
}

TEST(Svg, Deterministic) {
    auto p = coarseness_profile(line10(), line10_cover());
    const auto a = io::to_svg(p), b = io::to_svg(p);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<svg", 0), 0u);
    EXPECT_NE(a.find("</svg>"), std::string::npos);
    ScaleProfile q;
    q.push(0, 1);
    q.push(1, kInf);
    EXPECT_NE(io::to_svg(q).find("<circle"), std::string::npos);
    EXPECT_NO_THROW(io::to_svg(ScaleProfile{}));
}

TEST(Generators, SeededAndValidated) {
    GeneratorSpec s;
    s.kind = "random";
    s.set("n", 15).set("labels", 3);
    s.seed = 4;
    auto a = generate(s), b = generate(s);
    EXPECT_EQ(io::dump(io::to_json(a.space)), io::dump(io::to_json(b.space)));
    ASSERT_TRUE(a.cover && b.cover);
    EXPECT_EQ(*a.cover, *b.cover);
    s.seed = 5;
    EXPECT_NE(io::dump(io::to_json(generate(s).space)), io::dump(io::to_json(a.space)));

    GeneratorSpec bad;
    bad.kind = "line";
    bad.set("n", 0);
    EXPECT_THROW(generate(bad), ValidationError);
    bad.kind = "nope";
    EXPECT_THROW(generate(bad), ValidationError);
    GeneratorSpec big;
    big.kind = "cube-family";
    big.set("n", 2).set("k", std::vector<double>{2, 4});
    EXPECT_THROW(generate(big), SizeLimitError);
}

TEST(Cli, DeterministicOutput) {
    Scratch s("det");
    ASSERT_EQ(cli("--seed 7 gen random -p n=12 -p labels=3 --cover-out " + s("c.json"), s("s.json")), 0);
    ASSERT_EQ(cli("--seed 7 gen random -p n=12 -p labels=3 --cover-out " + s("c2.json"), s("s2.json")), 0);
    EXPECT_EQ(io::read_file(s("s.json")), io::read_file(s("s2.json")));
    EXPECT_EQ(io::read_file(s("c.json")), io::read_file(s("c2.json")));

    const std::string ctx = "--space " + s("s.json") + " --cover " + s("c.json");
    for (const std::string cmd : {"analyze", "refine --method ostrand", "pou --osc 2", "dim --mode Ln --n 1"}) {
        ASSERT_EQ(cli(ctx + " " + cmd, s("o1")), 0) << cmd;
        ASSERT_EQ(cli(ctx + " " + cmd, s("o2")), 0) << cmd;
        EXPECT_EQ(io::read_file(s("o1")), io::read_file(s("o2"))) << cmd;
    }
}

TEST(Cli, CsvExportRoundTrip) {
    Scratch s("csv");
    io::write_file(s("s.json"), io::dump(io::to_json(line10())));
    io::write_file(s("c.json"), io::dump(io::to_json(line10_cover())));
    ASSERT_EQ(cli("--space " + s("s.json") + " --cover " + s("c.json") + " analyze --csv " + s("p.csv")), 0);
    auto p = io::profile_from_csv(io::read_file(s("p.csv")));
    EXPECT_EQ(p, coarseness_profile(line10(), line10_cover()));
    std::vector<double> v;
    for (const auto& e : p.entries()) v.push_back(e.value);
    EXPECT_EQ(v, (std::vector<double>{2, 2, 2, 2, 2, 3, 4, 5, 6, 7}));

    ASSERT_EQ(cli("export --profile " + s("p.csv") + " --format csv", s("q.csv")), 0);
    EXPECT_EQ(io::read_file(s("q.csv")), io::read_file(s("p.csv")));
    ASSERT_EQ(cli("export --profile " + s("p.csv") + " --format svg", s("a.svg")), 0);
    ASSERT_EQ(cli("export --profile " + s("p.csv") + " --format svg", s("b.svg")), 0);
    EXPECT_EQ(io::read_file(s("a.svg")), io::read_file(s("b.svg")));
}

TEST(Cli, ExitCodes) {
    Scratch s("rc");
    io::write_file(s("s.json"), io::dump(io::to_json(line10())));
    io::write_file(s("c.json"), io::dump(io::to_json(line10_cover())));
    io::write_file(s("bad.json"), "{\"labels\": [{\"label\": \"A\", \"members\": [42]}]}");
    io::write_file(s("junk.json"), "not json");
    EXPECT_EQ(cli("--space " + s("s.json") + " analyze --cover " + s("c.json")), 0);
    EXPECT_EQ(cli("--space " + s("missing.json") + " analyze"), 1);
    EXPECT_EQ(cli("--space " + s("junk.json") + " analyze"), 1);
    EXPECT_EQ(cli("--space " + s("s.json") + " --cover " + s("bad.json") + " analyze"), 1);
    EXPECT_EQ(cli("gen nope"), 1);
    EXPECT_EQ(cli("refine --method nope"), 1);
    EXPECT_EQ(cli("--space " + s("s.json") + " map --retract 0,9 --scales 2,3,4"), 2);
    EXPECT_EQ(cli("gen cube-family -p n=2 -p k=2,4"), 3);
    EXPECT_EQ(cli("dim --mode sperner --k 5"), 3);
}
