#include <gtest/gtest.h>

#include "wb/error.hpp"
#include "wb/fault.hpp"
#include "wb/verify/suites.hpp"

using namespace wb;

namespace {

std::string describe(const Report& r) {
    std::string out;
    for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i)
        out += r.failures[i].id + ": " + r.failures[i].lhs + " != " + r.failures[i].rhs + "\n";
    return out;
}

} // namespace

class Suites : public ::testing::TestWithParam<std::string> {};

TEST_P(Suites, PassOnSmallSamples) {
    auto r = run_suite(GetParam(), {11, 2, 3});
    EXPECT_TRUE(r.ok()) << describe(r);
    EXPECT_GT(r.cases_run, 0u);
    EXPECT_EQ(r.suite, GetParam());
}

INSTANTIATE_TEST_SUITE_P(All, Suites, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) {
                             std::string s = info.param;
                             for (auto& c : s)
                                 if (c == '-') c = '_';
                             return s;
                         });

TEST(Verify, DeterministicFailuresSortedById) {
    set_fault_injection(true);
    auto a = run_suite("ghosts", {5, 1, 3});
    auto b = run_suite("ghosts", {5, 1, 3});
    set_fault_injection(false);
    ASSERT_FALSE(a.ok());
    ASSERT_EQ(a.failures.size(), b.failures.size());
    for (std::size_t i = 0; i < a.failures.size(); ++i) {
        EXPECT_EQ(a.failures[i].id, b.failures[i].id);
        EXPECT_EQ(a.failures[i].lhs, b.failures[i].lhs);
        if (i) EXPECT_LT(a.failures[i - 1].id, a.failures[i].id);
    }
    EXPECT_FALSE(a.failures[0].inputs.empty());
    EXPECT_EQ(a.cases_run, b.cases_run);
}

TEST(Verify, FaultIsVisibleToRingAxioms) {
    set_fault_injection(true);
    auto r = run_suite("rings", {7, 2, 3});
    set_fault_injection(false);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(run_suite("qpolys", {7, 1, 3}).ok());
}

TEST(Verify, UnknownSuite) {
    try {
        run_suite("nope", {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}
