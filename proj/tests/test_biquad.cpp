#include <gtest/gtest.h>

#include "oracles.hpp"
#include "polya/biquad.hpp"
#include "polya/report_io.hpp"

using namespace polya;

namespace {

PolyaReport report(std::int64_t m, std::int64_t n)
{
    return polya_report(make_biquadratic_field(m, n));
}

}  // namespace

TEST(Biquad, Subfields)
{
    EXPECT_EQ(subfields(2, 85), (std::array<std::int64_t, 3>{2, 85, 170}));
    EXPECT_EQ(subfields(3, 51), (std::array<std::int64_t, 3>{3, 51, 17}));
    EXPECT_EQ(subfields(6, 10), (std::array<std::int64_t, 3>{6, 10, 15}));
    EXPECT_EQ(subfields(-1, 2), (std::array<std::int64_t, 3>{-1, 2, -2}));
    EXPECT_THROW(subfields(2, 2), std::invalid_argument);
    EXPECT_THROW(subfields(2, 8), std::invalid_argument);
    EXPECT_THROW(subfields(1, 5), std::invalid_argument);
    EXPECT_THROW(subfields(12, 5), std::invalid_argument);
}

TEST(Biquad, FieldIsCanonical)
{
    auto k = make_biquadratic_field(85, 2);
    EXPECT_EQ(k.deltas, (std::array<std::int64_t, 3>{2, 85, 170}));
    EXPECT_TRUE(k.totally_real);
    EXPECT_FALSE(make_biquadratic_field(-1, 5).totally_real);
    EXPECT_FALSE(make_biquadratic_field(-1, -5).totally_real);
}

TEST(Biquad, Ramification)
{
    auto a = ramification(make_biquadratic_field(2, 85));
    EXPECT_EQ(a.entries, (std::map<std::int64_t, int>{{2, 2}, {5, 2}, {17, 2}}));
    EXPECT_EQ(a.product, 8u);
    auto b = ramification(make_biquadratic_field(2, 3));
    EXPECT_EQ(b.entries, (std::map<std::int64_t, int>{{2, 4}, {3, 2}}));
    EXPECT_EQ(b.product, 8u);
    auto c = ramification(make_biquadratic_field(5, 13));
    EXPECT_EQ(c.entries, (std::map<std::int64_t, int>{{5, 2}, {13, 2}}));
    EXPECT_EQ(c.product, 4u);
    EXPECT_EQ(c.exponent(2), 1);
}

TEST(Biquad, RamificationMatchesDiscriminantRule)
{
    for (std::int64_t m = 2; m < 60; ++m) {
        for (std::int64_t n = m + 1; n < 60; ++n) {
            if (!oracle::is_squarefree(m) || !oracle::is_squarefree(n) || oracle::kernel(m * n) == 1)
                continue;
            auto k = make_biquadratic_field(m, n);
            auto r = ramification(k);
            for (std::int64_t l = 2; l < 60 * 60; ++l) {
                if (!oracle::is_prime(l))
                    continue;
                int divides = 0, two_ram = 0;
                for (std::int64_t d : k.deltas) {
                    divides += d % l == 0;
                    two_ram += (d % 4 != 1);
                }
                int want = 1;
                if (l == 2)
                    want = two_ram == 3 ? 4 : two_ram ? 2 : 1;
                else if (divides)
                    want = 2;
                ASSERT_EQ(r.exponent(l), want) << m << " " << n << " " << l;
            }
        }
    }
}

TEST(Biquad, HGenerators)
{
    auto g = h_generators(make_biquadratic_field(2, 85));
    std::array<SquareClass, 6> want{class_of(2), class_of(85), class_of(170),
                                    SquareClass::identity(), SquareClass::identity(), SquareClass::identity()};
    EXPECT_EQ(g, want);
    auto h = h_generators(make_biquadratic_field(3, 697));
    EXPECT_EQ(h[3], class_of(6));
    EXPECT_THROW(h_generators(make_biquadratic_field(-1, 2)), SignatureError);
}

TEST(Biquad, H1Order)
{
    auto a = h1_order(make_biquadratic_field(2, 85));
    EXPECT_EQ(a.h_order, 4u);
    EXPECT_EQ(a.index_factor, 1);
    EXPECT_EQ(a.h1_order, 4u);
    auto b = h1_order(make_biquadratic_field(3, 697));
    EXPECT_EQ(b.h_order, 8u);
    EXPECT_EQ(b.index_factor, 1);
    auto c = h1_order(make_biquadratic_field(2, 3));
    EXPECT_TRUE(c.two_totally_ramified);
    EXPECT_EQ(c.index_factor, 2);
    EXPECT_EQ(c.common_norm, -2);
    ASSERT_EQ(c.alphas.size(), 3u);
    for (auto const& al : c.alphas)
        EXPECT_EQ(al.norm(), -2);
}

TEST(Biquad, IndexNeedsOneCommonNormSign)
{
    // Q(sqrt 3, sqrt 34): 3 and 102 only represent -2, 34 only +2.
    auto k = make_biquadratic_field(3, 34);
    EXPECT_TRUE(norm_equation(3, -2));
    EXPECT_FALSE(norm_equation(3, 2));
    EXPECT_TRUE(norm_equation(34, 2));
    EXPECT_FALSE(norm_equation(34, -2));
    auto h = h1_order(k);
    EXPECT_TRUE(h.two_totally_ramified);
    EXPECT_EQ(h.index_factor, 1);
    EXPECT_EQ(polya_report(k).po_order, 2u);
}

TEST(Biquad, PolyaReportExamples)
{
    auto a = report(2, 85);
    EXPECT_EQ(a.po_order, 2u);
    EXPECT_EQ(a.po_structure.str(), "Z/2Z");
    EXPECT_EQ(a.unit_norms, (std::array<int, 3>{-1, -1, -1}));
    EXPECT_TRUE(a.exact());
    EXPECT_EQ(report(2, 5).po_order, 1u);
    EXPECT_EQ(report(2, 5).po_structure.str(), "trivial");
    EXPECT_EQ(report(3, 91).po_order, 1u);
    EXPECT_EQ(report(3, 697).po_order, 2u);
    EXPECT_THROW(report(-1, 2), SignatureError);
}

TEST(Biquad, StructureUndeterminedOnlyWhenNeeded)
{
    // 2 is totally ramified in Q(sqrt 6, sqrt 7).
    auto r = report(6, 7);
    EXPECT_EQ(r.profile.exponent(2), 4);
    if (r.po_order > 2)
        EXPECT_FALSE(r.po_structure.determined);
    else
        EXPECT_TRUE(r.po_structure.determined);
}

TEST(Biquad, ExactnessAndBoundsOverRange)
{
    for (std::int64_t m = 2; m <= 80; ++m) {
        for (std::int64_t n = m + 1; n <= 80; ++n) {
            if (!is_squarefree(m) || !is_squarefree(n))
                continue;
            auto r = report(m, n);
            ASSERT_TRUE(r.exact()) << m << " " << n;
            ASSERT_LE(r.h_order, r.h1_order);
            ASSERT_LE(r.h1_order, r.profile.product);
            ASSERT_EQ(r.profile.product % r.h1_order, 0u);
        }
    }
}

TEST(Biquad, ReportIndependentOfPresentation)
{
    const std::pair<std::int64_t, std::int64_t> fields[] = {{2, 85}, {3, 697}, {6, 10}, {2, 3}, {7, 62}, {5, 6}};
    for (auto [m, n] : fields) {
        std::int64_t k = subfields(m, n)[2];
        std::string ref = to_json(report(m, n)).dump();
        EXPECT_EQ(to_json(report(n, m)).dump(), ref);
        EXPECT_EQ(to_json(report(m, k)).dump(), ref);
        EXPECT_EQ(to_json(report(k, n)).dump(), ref);
    }
}

TEST(Leriche, Examples)
{
    EXPECT_EQ(leriche_classify(-2, 7).verdict, Verdict::not_polya);
    EXPECT_EQ(leriche_classify(-1, 6).verdict, Verdict::not_polya);
    EXPECT_EQ(leriche_classify(2, 5).verdict, Verdict::polya);
    EXPECT_EQ(leriche_classify(2, 85).verdict, Verdict::outside_proposition);
    EXPECT_EQ(leriche_classify(7, 6).verdict, Verdict::not_polya);    // 7 = 7 (mod 8), 3 = 3 (mod 8)
    EXPECT_EQ(leriche_classify(7, 34).verdict, Verdict::polya);       // 17 = 1 (mod 8)
    EXPECT_EQ(leriche_classify(3, 6).verdict, Verdict::polya);        // p = q: Q(sqrt 2, sqrt 3)
}

TEST(Leriche, IndependentOfPresentationOrder)
{
    for (auto [m, n] : {std::pair<std::int64_t, std::int64_t>{7, 6}, {3, 22}, {5, 6}, {-2, 7}, {-1, 6}}) {
        auto a = leriche_classify(m, n), b = leriche_classify(n, m);
        EXPECT_EQ(a.verdict, b.verdict);
        EXPECT_EQ(a.rule, b.rule);
    }
}
