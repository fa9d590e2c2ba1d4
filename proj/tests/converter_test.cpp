#include <gtest/gtest.h>

#include "objlog/converter.hpp"
#include "objlog/text_io.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace objlog;
namespace fx = objlog::testing;

class ConverterTest : public ::testing::Test {
protected:
    Registry polygon = load_schema(fx::kPolygonSchema);
    Registry rich = load_schema(fx::kRichSchema);
};

TEST_F(ConverterTest, TetragonEncodesToListing)
{
    Term t = to_term(polygon, fx::sample_tetragon());
    EXPECT_TRUE(is_ground(t));
    EXPECT_EQ(t, parse_term(fx::kTetragonListing));
    EXPECT_EQ(print_canonical(t) + ".", fx::strip_layout(fx::kTetragonListing));
}

TEST_F(ConverterTest, ListingDecodesToTetragon)
{
    ObjectValue v = from_term(polygon, parse_term(fx::kTetragonListing));
    ASSERT_EQ(v.kind(), ObjectValue::Kind::Entity);
    EXPECT_EQ(v.as_entity().class_name, "Tetragon");
    EXPECT_EQ(v.as_entity().values[0].as_string(), "abcd");
    EXPECT_EQ(v.as_entity().values[1].as_array().size(), 4u);
    EXPECT_EQ(v.as_entity().values[2].as_array().size(), 2u);
    EXPECT_EQ(v, fx::sample_tetragon());
}

TEST_F(ConverterTest, PrimitiveEncodings)
{
    EXPECT_EQ(to_term(polygon, ObjectValue::null()), Term::atom("nil"));
    EXPECT_EQ(to_term(polygon, ObjectValue::boolean(true)), Term::atom("true"));
    EXPECT_EQ(to_term(polygon, ObjectValue::boolean(false)), Term::atom("fail"));
    EXPECT_EQ(to_term(polygon, ObjectValue::integer(-7)), Term::integer(-7));
    EXPECT_EQ(to_term(polygon, ObjectValue::floating(2.0)), Term::floating(2.0));
    EXPECT_EQ(to_term(polygon, ObjectValue::string("New York")), Term::atom("New York"));
    EXPECT_EQ(to_term(polygon, ObjectValue::array({})), Term::list({}));
    EXPECT_NE(to_term(polygon, ObjectValue::array({})), to_term(polygon, ObjectValue::null()));
}

TEST_F(ConverterTest, SchemaDirectedDecoding)
{
    EXPECT_EQ(from_term(polygon, Term::atom("true"), TypeRef::boolean()), ObjectValue::boolean(true));
    EXPECT_EQ(from_term(polygon, Term::atom("true"), TypeRef::string()), ObjectValue::string("true"));
    EXPECT_EQ(from_term(polygon, Term::atom("fail"), TypeRef::boolean()), ObjectValue::boolean(false));
    EXPECT_EQ(from_term(polygon, Term::atom("false"), TypeRef::boolean()), ObjectValue::boolean(false));
    EXPECT_EQ(from_term(polygon, Term::atom("nil"), TypeRef::string()), ObjectValue::string("nil"));
    EXPECT_THROW(from_term(polygon, Term::integer(1), TypeRef::boolean()), ConversionError);
    EXPECT_THROW(from_term(polygon, Term::integer(2), TypeRef::floating()), ConversionError);
    EXPECT_THROW(from_term(polygon, Term::floating(2.0), TypeRef::integer()), ConversionError);
    EXPECT_THROW(from_term(polygon, parse_term("[a|T]"), TypeRef::list_of(TypeRef::string())), ConversionError);
}

TEST_F(ConverterTest, NullHandling)
{
    // Nullable entity slot.
    ObjectValue seg = fx::segment("s", ObjectValue::null(), fx::point("b", 1, 2));
    Term t = to_term(polygon, seg);
    EXPECT_EQ(print_canonical(t), "'Segment'(s,nil,'Point'(b,1,2))");
    EXPECT_EQ(from_term(polygon, t), seg);
    // Non-nullable primitive.
    EXPECT_THROW(to_term(polygon, ObjectValue::entity("Point", {ObjectValue::string("a"), ObjectValue::null(), ObjectValue::integer(1)})),
                 ConversionError);
    EXPECT_THROW(from_term(polygon, parse_term("'Point'(a,nil,1)")), ConversionError);
    // "nil" in a nullable string slot would decode as null.
    EXPECT_THROW(to_term(polygon, fx::point("nil", 1, 1)), ConversionError);
    // Nullable override on a primitive.
    ObjectValue badge = from_term(rich, parse_term("'org.example.Badge'(b,true,nil,0.5,[x,nil],nil)"));
    EXPECT_TRUE(badge.as_entity().values[5].is_null());
    EXPECT_EQ(badge.as_entity().values[4].as_array()[1], ObjectValue::string("nil"));
}

TEST_F(ConverterTest, EncodingErrors)
{
    EXPECT_THROW(to_term(polygon, ObjectValue::entity("Nope", {ObjectValue::integer(1)})), ConversionError);
    EXPECT_THROW(to_term(polygon, ObjectValue::entity("Point", {ObjectValue::string("a"), ObjectValue::integer(1)})), ConversionError);
    EXPECT_THROW(to_term(polygon, ObjectValue::entity("Point", {ObjectValue::string("a"), ObjectValue::string("x"), ObjectValue::integer(1)})),
                 ConversionError);
    EXPECT_THROW(to_term(polygon, ObjectValue::string("")), ConversionError);
    EXPECT_THROW(to_term(rich, ObjectValue::entity("Shape", {ObjectValue::string("s"), ObjectValue::boolean(true)})), ConversionError);
    // A Point where a Segment is expected.
    ObjectValue bad = ObjectValue::entity("Polygon", {ObjectValue::string("p"), ObjectValue::array({fx::point("a", 1, 1)})});
    try {
        to_term(polygon, bad);
        FAIL();
    } catch (const ConversionError& e) {
        EXPECT_NE(std::string(e.what()).find("Polygon.segments[0]"), std::string::npos) << e.what();
    }
}

TEST_F(ConverterTest, CycleDetectionAndSharing)
{
    // Sharing one Point node twice is fine; the subtree is duplicated.
    ObjectValue a = fx::point("a", 2, 2);
    Term shared = to_term(polygon, fx::segment("aa", a, a));
    EXPECT_EQ(print_canonical(shared), "'Segment'(aa,'Point'(a,2,2),'Point'(a,2,2))");

    Registry r = load_schema("class(node, [], [attr(id, int), attr(next, entity(node))]).");
    ObjectValue n1 = ObjectValue::entity("node", {ObjectValue::integer(1), ObjectValue::null()});
    ObjectValue n2 = ObjectValue::entity("node", {ObjectValue::integer(2), n1});
    EXPECT_EQ(print_canonical(to_term(r, n2)), "node(2,node(1,nil))");
    n1.as_entity().values[1] = n2;
    EXPECT_THROW(to_term(r, n2), ConversionError);
    n1.as_entity().values[1] = ObjectValue::null();  // break the cycle for destruction
}

TEST_F(ConverterTest, DecodingErrors)
{
    EXPECT_THROW(from_term(polygon, parse_term("'Polygon'(X,[],[])")), ConversionError);
    EXPECT_THROW(from_term(polygon, parse_term("'Polygon'(a)")), ConversionError);
    EXPECT_THROW(from_term(polygon, parse_term("'Point'(a,2,true)")), ConversionError);
    // A Polygon where a Segment is expected.
    EXPECT_THROW(from_term(polygon, parse_term("'Polygon'(p,['Polygon'(q,[])])")), ConversionError);
    EXPECT_THROW(from_term(polygon, Term::atom("abcd")), ConversionError);
}

TEST_F(ConverterTest, SubclassSubstitution)
{
    Term t = parse_term("'Link'('Circle'(c,true,'Point'(o,0,0),1.5),'Point'(p,1,1),n,nil)");
    ObjectValue link = from_term(rich, t);
    EXPECT_EQ(link.as_entity().values[0].as_entity().class_name, "Circle");
    Term badge = parse_term("'Link'('org.example.Badge'(c,fail,nil,1.5,[],2.0),'Point'(p,1,1),n,true)");
    EXPECT_EQ(from_term(rich, badge).as_entity().values[0].as_entity().class_name, "Badge");
    EXPECT_EQ(to_term(rich, from_term(rich, badge)), badge);
}

TEST_F(ConverterTest, Templates)
{
    QueryObject q{"Tetragon", {ObjectValue::string("abcd"), Unbound{"S"}, Unbound{"D"}}};
    EXPECT_EQ(print_canonical(to_template(polygon, q)), "'Polygon'(abcd,S,D)");
    EXPECT_EQ(to_template(polygon, QueryObject::any(polygon, "Tetragon")), polygon.most_general_term("Tetragon"));

    Term shared = to_template(polygon, QueryObject{"Point", {Unbound{"_"}, Unbound{"V"}, Unbound{"V"}}});
    EXPECT_EQ(shared.args()[1].var_id(), shared.args()[2].var_id());
    EXPECT_EQ(print_canonical(shared), "'Point'(_,V,V)");

    EXPECT_THROW(to_template(polygon, QueryObject{"Point", {Unbound{"X"}}}), ConversionError);
    EXPECT_THROW(to_template(polygon, QueryObject{"Point", {Unbound{"lower"}, Unbound{"V"}, Unbound{"V"}}}), ConversionError);
    EXPECT_THROW(to_template(rich, QueryObject::any(rich, "Shape")), ConversionError);
}

TEST_F(ConverterTest, RoundTripProperty)
{
    fx::ObjectGenerator gen(rich, 7);
    for (int i = 0; i < 500; ++i) {
        ObjectValue v = gen.any_entity();
        Term t = to_term(rich, v);
        ASSERT_TRUE(is_ground(t));
        ASSERT_EQ(from_term(rich, t), v) << describe(v);
        // Every entity node resolves back to its own class.
        EXPECT_EQ(rich.resolve(t.name(), t.arity()).name, v.as_entity().class_name);
    }
}

TEST_F(ConverterTest, InheritancePrefixProperty)
{
    fx::ObjectGenerator gen(rich, 8);
    for (int i = 0; i < 200; ++i) {
        ObjectValue tetragon = gen.entity("Tetragon", 1);
        const auto& values = tetragon.as_entity().values;
        ObjectValue parent = ObjectValue::entity("Polygon", {values[0], values[1]});
        Term sub = to_term(rich, tetragon);
        Term base = to_term(rich, parent);
        ASSERT_EQ(sub.arity(), 3u);
        EXPECT_EQ(sub.name(), base.name());
        EXPECT_EQ(sub.args()[0], base.args()[0]);
        EXPECT_EQ(sub.args()[1], base.args()[1]);
    }
}
