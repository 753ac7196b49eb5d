#include "tempoweave/verdict.hpp"

#include <gtest/gtest.h>

namespace {

using namespace tempoweave;
constexpr Verdict T = Verdict::True, Tc = Verdict::CurrentlyTrue, Fc = Verdict::CurrentlyFalse, F = Verdict::False;

TEST(Verdict, PrintedIdentities) {
  EXPECT_EQ(meet(T, Fc), Fc);
  EXPECT_EQ(join(T, Fc), T);
  EXPECT_EQ(complement(Fc), Tc);
}

TEST(Verdict, MeetExamples) {
  EXPECT_EQ(meet(F, Tc), F);
  EXPECT_EQ(meet(Tc, Fc), Fc);
}

TEST(Verdict, JoinExamples) {
  EXPECT_EQ(join(F, F), F);
  EXPECT_EQ(join(Tc, Fc), Tc);
}

TEST(Verdict, ComplementExamples) {
  EXPECT_EQ(complement(T), F);
  EXPECT_EQ(complement(complement(Tc)), Tc);
}

TEST(Verdict, LatticeLawsOverAllTriples) {
  for (Verdict a : kAllVerdicts) {
    EXPECT_EQ(meet(a, a), a);
    EXPECT_EQ(join(a, a), a);
    EXPECT_EQ(meet(T, a), a);
    EXPECT_EQ(join(F, a), a);
    EXPECT_EQ(complement(complement(a)), a);
    for (Verdict b : kAllVerdicts) {
      EXPECT_EQ(meet(a, b), meet(b, a));
      EXPECT_EQ(join(a, b), join(b, a));
      EXPECT_EQ(join(a, meet(a, b)), a);
      EXPECT_EQ(meet(a, join(a, b)), a);
      EXPECT_EQ(complement(meet(a, b)), join(complement(a), complement(b)));
      EXPECT_EQ(complement(join(a, b)), meet(complement(a), complement(b)));
      for (Verdict c : kAllVerdicts) {
        EXPECT_EQ(meet(a, meet(b, c)), meet(meet(a, b), c));
        EXPECT_EQ(join(a, join(b, c)), join(join(a, b), c));
        EXPECT_EQ(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
      }
    }
  }
}

TEST(Verdict, Finality) {
  EXPECT_TRUE(is_final(T));
  EXPECT_TRUE(is_final(F));
  EXPECT_FALSE(is_final(Tc));
  EXPECT_FALSE(is_final(Fc));
}

TEST(Verdict, WireNames) {
  for (Verdict v : kAllVerdicts)
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  EXPECT_EQ(to_string(Fc), "Fc");
  EXPECT_FALSE(verdict_from_string("t").has_value());
}

} // namespace
