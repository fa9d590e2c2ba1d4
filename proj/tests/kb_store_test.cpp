#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "objlog/kb_store.hpp"
#include "objlog/text_io.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace objlog;
namespace fx = objlog::testing;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() / ("objlog_kb_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const char* name) const { return path_ / name; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

class KbTest : public ::testing::Test {
protected:
    Registry polygon = load_schema(fx::kPolygonSchema);
    Registry rich = load_schema(fx::kRichSchema);
};

TEST_F(KbTest, AssertDeduplicates)
{
    KnowledgeBase kb(polygon);
    Term fact = parse_term(fx::kTetragonListing);
    EXPECT_TRUE(kb.assert_fact(fact));
    EXPECT_FALSE(kb.assert_fact(parse_term(fx::kTetragonListing)));
    EXPECT_EQ(kb.size(), 1u);
    EXPECT_TRUE(kb.contains(fact));

    EXPECT_THROW(kb.assert_fact(parse_term("'Point'(a,X,2)")), KbError);
    EXPECT_THROW(kb.assert_fact(parse_term("'Point'(a,2)")), KbError);
    EXPECT_THROW(kb.assert_fact(Term::integer(3)), KbError);
    EXPECT_EQ(kb.size(), 1u);
}

TEST_F(KbTest, PermissiveKeepsUnknownFacts)
{
    KnowledgeBase kb(polygon, KbMode::Permissive);
    EXPECT_TRUE(kb.assert_fact(parse_term("likes(a,b)")));
    EXPECT_TRUE(kb.assert_fact(Term::integer(3)));
    EXPECT_THROW(kb.assert_fact(parse_term("likes(a,X)")), KbError);
    EXPECT_TRUE(kb.assert_fact(parse_term("'Point'(a,2,2)")));
    // Undecodable facts are skipped by find in permissive mode.
    EXPECT_TRUE(kb.assert_fact(parse_term("'Point'(b,x,2)")));
    std::vector<ObjectValue> pts = kb.find(QueryObject::any(polygon, "Point"));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0], fx::point("a", 2, 2));
}

TEST_F(KbTest, QueryAndRetract)
{
    KnowledgeBase kb(polygon, KbMode::Permissive);
    for (const char* f : {"p(a,a)", "p(a,b)", "p(b,b)", "q(a)"}) kb.assert_fact(parse_term(f));
    Term templ = parse_term("p(X,X)");
    auto hits = kb.query(templ);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_EQ(hits[0].fact, parse_term("p(a,a)"));
    EXPECT_EQ(*hits[0].bindings.lookup(0), Term::atom("a"));
    EXPECT_EQ(hits[1].fact, parse_term("p(b,b)"));

    EXPECT_EQ(kb.retract(templ), 2u);
    ASSERT_EQ(kb.size(), 2u);
    EXPECT_EQ(kb.facts()[0], parse_term("p(a,b)"));
    EXPECT_EQ(kb.facts()[1], parse_term("q(a)"));
    EXPECT_FALSE(kb.contains(parse_term("p(a,a)")));
    EXPECT_EQ(kb.retract(parse_term("zz")), 0u);
    // A retracted fact can be asserted again.
    EXPECT_TRUE(kb.assert_fact(parse_term("p(a,a)")));
}

TEST_F(KbTest, SaveAndFindTetragon)
{
    KnowledgeBase kb(polygon);
    EXPECT_TRUE(kb.save_object(fx::sample_tetragon()));
    EXPECT_FALSE(kb.save_object(fx::sample_tetragon()));
    kb.save_object(ObjectValue::entity("Polygon", {ObjectValue::string("empty"), ObjectValue::array({})}));

    auto tetragons = kb.find(QueryObject{"Tetragon", {ObjectValue::string("abcd"), Unbound{"S"}, Unbound{"D"}}});
    ASSERT_EQ(tetragons.size(), 1u);
    EXPECT_EQ(tetragons[0], fx::sample_tetragon());
    EXPECT_TRUE(kb.find(QueryObject{"Tetragon", {ObjectValue::string("zzz"), Unbound{"S"}, Unbound{"D"}}}).empty());
    // Arity separates the parent class from the subclass.
    auto polygons = kb.find(QueryObject::any(polygon, "Polygon"));
    ASSERT_EQ(polygons.size(), 1u);
    EXPECT_EQ(polygons[0].as_entity().values[0].as_string(), "empty");
}

TEST_F(KbTest, FilesRoundTrip)
{
    TempDir dir;
    KnowledgeBase kb(polygon);
    kb.save_object(fx::sample_tetragon());
    kb.save_object(fx::point("New York", -1, 0));
    EXPECT_EQ(kb.store_file(dir / "kb.pl"), 2u);
    std::string text = slurp(dir / "kb.pl");
    EXPECT_EQ(text, kb.to_text());
    EXPECT_EQ(text.substr(text.find('\n') + 1), "'Point'('New York',-1,0).\n");

    KnowledgeBase back(polygon);
    EXPECT_EQ(back.load_file(dir / "kb.pl"), 2u);
    EXPECT_EQ(back.facts(), kb.facts());
    EXPECT_EQ(back.load_file(dir / "kb.pl"), 0u);

    EXPECT_THROW(back.load_file(dir / "missing.pl"), IoError);
    EXPECT_EQ(KnowledgeBase(polygon).to_text(), "");
}

TEST_F(KbTest, LoadIsAllOrNothing)
{
    KnowledgeBase kb(polygon);
    EXPECT_THROW(kb.load_text("'Point'(a,1,1).\n'Point'(b,X,1).\n"), KbError);
    EXPECT_TRUE(kb.empty());
    EXPECT_THROW(kb.load_text("'Point'(a,1,1).\n'Point'(b,"), ParseError);
    EXPECT_TRUE(kb.empty());
    EXPECT_THROW(kb.load_text("'Point'(a,1,1).\nunknown(b).\n"), KbError);
    EXPECT_TRUE(kb.empty());
    EXPECT_EQ(kb.load_text("'Point'(a,1,1).\n'Point'(a,1,1).\n"), 1u);
}

TEST_F(KbTest, DedupProperty)
{
    fx::Rng rng(77);
    for (int round = 0; round < 100; ++round) {
        KnowledgeBase kb(rich, KbMode::Permissive);
        std::vector<Term> distinct;
        std::size_t inserts = 0;
        for (int i = 0; i < 30; ++i) {
            Term f = fx::random_small_fact(rng);
            if (!distinct.empty() && rng.chance(0.4)) f = rng.pick(distinct);
            bool fresh = std::find(distinct.begin(), distinct.end(), f) == distinct.end();
            if (fresh) distinct.push_back(f);
            ASSERT_EQ(kb.assert_fact(f), fresh);
            inserts += fresh;
        }
        ASSERT_EQ(kb.size(), inserts);
        ASSERT_EQ(kb.facts(), distinct);
        for (std::size_t i = 0; i < kb.size(); ++i) {
            for (std::size_t j = i + 1; j < kb.size(); ++j) ASSERT_NE(kb.facts()[i], kb.facts()[j]);
        }
    }
}

TEST_F(KbTest, SaveFindAndFileProperty)
{
    TempDir dir;
    fx::ObjectGenerator gen(rich, 19, 3, 3);
    KnowledgeBase kb(rich);
    std::vector<ObjectValue> saved;
    for (int i = 0; i < 150; ++i) {
        ObjectValue v = gen.any_entity();
        if (kb.save_object(v)) saved.push_back(v);
    }
    ASSERT_GE(kb.size(), 100u);
    for (const ObjectValue& v : saved) {
        const std::string& cls = v.as_entity().class_name;
        auto found = kb.find(QueryObject::any(rich, cls));
        ASSERT_NE(std::find(found.begin(), found.end(), v), found.end()) << describe(v);
        for (const ObjectValue& f : found) ASSERT_EQ(f.as_entity().class_name, cls);
    }
    kb.store_file(dir / "a.pl");
    KnowledgeBase back(rich);
    back.load_file(dir / "a.pl");
    EXPECT_EQ(back.facts(), kb.facts());
    back.store_file(dir / "b.pl");
    EXPECT_EQ(slurp(dir / "a.pl"), slurp(dir / "b.pl"));
}
