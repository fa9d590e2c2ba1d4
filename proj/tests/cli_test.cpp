#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "objlog/text_io.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
namespace fx = objlog::testing;
using objlog::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / (std::string("objlog_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        write("polygon.pls", fx::kPolygonSchema);
        write("tetragon.pl", fx::kTetragonListing);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const char* name) const { return (dir_ / name).string(); }

    void write(const char* name, const std::string& text) const
    {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << text;
    }

    std::string read(const char* name) const
    {
        std::ifstream f(dir_ / name, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    Outcome call(std::vector<std::string> args) const
    {
        std::ostringstream out, err;
        int code = run(args, out, err);
        return {code, out.str(), err.str()};
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, DeclsForPolygonClasses)
{
    Outcome r = call({"decls", "--schema", path("polygon.pls")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("'Polygon'(Id,Segments).\n"), std::string::npos);
    EXPECT_NE(r.out.find("'Polygon'(Id,Segments,Diagonals).\n"), std::string::npos);
}

TEST_F(CliTest, CanonIsIdempotent)
{
    Outcome r = call({"canon", "--kb", path("tetragon.pl")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, fx::strip_layout(fx::kTetragonListing) + "\n");
    write("once.pl", r.out);
    Outcome again = call({"canon", "--kb", path("once.pl")});
    EXPECT_EQ(again.out, r.out);

    Outcome to_file = call({"canon", "--kb", path("tetragon.pl"), "--out", path("out.pl")});
    EXPECT_EQ(to_file.code, 0);
    EXPECT_EQ(to_file.out, "");
    EXPECT_EQ(read("out.pl"), r.out);
}

TEST_F(CliTest, ValidateWithAndWithoutSchema)
{
    Outcome ok = call({"validate", "--schema", path("polygon.pls"), "--kb", path("tetragon.pl")});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(ok.out, "1 clause ok\n");

    write("bad.pl", "'Point'(a,1,1).\nlikes(a,b).\n'Point'(b,X,1).\n'Point'(c,x,1).\n'Point'(d,\n");
    Outcome bad = call({"validate", "--schema", path("polygon.pls"), "--kb", path("bad.pl")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("bad.pl:2:1: error:"), std::string::npos) << bad.err;
    EXPECT_NE(bad.err.find("bad.pl:3:1: error:"), std::string::npos) << bad.err;
    EXPECT_NE(bad.err.find("bad.pl:4:1: error:"), std::string::npos) << bad.err;
    EXPECT_NE(bad.err.find("bad.pl:6:"), std::string::npos) << bad.err;
    EXPECT_NE(bad.err.find("4 problems"), std::string::npos) << bad.err;

    write("free.pl", "likes(a,b).\nlikes(b,c).\n");
    EXPECT_EQ(call({"validate", "--kb", path("free.pl")}).code, 0);
    EXPECT_EQ(call({"validate", "--schema", path("polygon.pls"), "--kb", path("free.pl")}).code, 1);
    EXPECT_EQ(call({"validate", "--schema", path("polygon.pls"), "--kb", path("free.pl"), "--permissive"}).code, 0);
}

TEST_F(CliTest, QueryPrintsBindings)
{
    Outcome r = call({"query", "--schema", path("polygon.pls"), "--kb", path("tetragon.pl"), "--goal", "'Polygon'(abcd,S,D)"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string fact = fx::strip_layout(fx::kTetragonListing);
    EXPECT_EQ(r.out.rfind(fact + "\n", 0), 0u);
    EXPECT_NE(r.out.find("  S = ['Segment'(ab,"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("  D = ['Segment'(ac,"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.substr(r.out.size() - 8), "1 match\n");

    Outcome none = call({"query", "--kb", path("tetragon.pl"), "--goal", "'Polygon'(x,_,_)"});
    EXPECT_EQ(none.code, 0);
    EXPECT_EQ(none.out, "0 matches\n");

    EXPECT_EQ(call({"query", "--kb", path("tetragon.pl"), "--goal", "'Polygon'(x"}).code, 1);
}

TEST_F(CliTest, Roundtrip)
{
    Outcome r = call({"roundtrip", "--schema", path("polygon.pls"), "--kb", path("tetragon.pl")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "1 fact round-tripped\n");

    // nil in the nullable id decodes to null and encodes back to nil.
    write("nil.pl", "'Point'(nil,1,1).\n");
    EXPECT_EQ(call({"roundtrip", "--schema", path("polygon.pls"), "--kb", path("nil.pl")}).code, 0);

    write("bad.pl", "'Point'(a,1,1).\n'Point'(b,x,1).\n");
    Outcome bad = call({"roundtrip", "--schema", path("polygon.pls"), "--kb", path("bad.pl")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("fact 2: decode failed"), std::string::npos) << bad.err;
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"query", "--kb", path("tetragon.pl")}).code, 2);
    EXPECT_EQ(call({"canon", "--kb", path("missing.pl")}).code, 2);
    EXPECT_EQ(call({"decls"}).code, 2);
    Outcome help = call({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("roundtrip"), std::string::npos);
}
