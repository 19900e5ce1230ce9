#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracles.hpp"
#include "permsphere/count_tables.hpp"

using namespace permsphere;

TEST_CASE("derangement numbers") {
    CHECK(derangement_count(0) == 1);
    CHECK(derangement_count(1) == 0);
    CHECK(derangement_count(4) == 9);
    CHECK(oracle::brute_derangement_count(4) == 9);
    CHECK(derangement_count(6) == 265);
    CHECK(derangement_count(10) == 1334961);

    // de Montmort's alternating sum, evaluated exactly
    for (int n = 0; n <= 20; ++n) {
        Rational sum = 0;
        for (int j = 0; j <= n; ++j)
            sum += Rational((j % 2 == 0) ? 1 : -1, factorial_big(j));
        CHECK(Rational(derangement_count(n)) == Rational(factorial_big(n)) * sum);
    }

    // the floor form d_n = floor(n!/e + 1/n), n >= 2
    using boost::multiprecision::cpp_bin_float_50;
    const cpp_bin_float_50 e = exp(cpp_bin_float_50(1));
    for (int n = 2; n <= 12; ++n) {
        const cpp_bin_float_50 x = cpp_bin_float_50(factorial_big(n)) / e + cpp_bin_float_50(1) / n;
        CHECK(BigInt(static_cast<cpp_bin_float_50>(floor(x)).convert_to<long long>()) ==
              derangement_count(n));
    }
}

TEST_CASE("sphere counts against brute force") {
    CHECK(sphere_count(Metric::Hamming, 4, 1) == 8);  // 4 * d_3
    CHECK(sphere_count(Metric::KendallTau, 3, 1) == 2);
    CHECK(sphere_count(Metric::Cayley, 3, 2) == 3);
    for (Metric m : {Metric::Hamming, Metric::KendallTau, Metric::Cayley}) {
        for (int n = 1; n <= 6; ++n) {
            const auto brute = oracle::brute_sphere_counts(m, n);
            for (long long k = statistic_min(m, n) - 1; k <= statistic_max(m, n) + 1; ++k) {
                const auto it = brute.find(k);
                const BigInt expected = it == brute.end() ? BigInt(0) : it->second;
                CHECK(sphere_count(m, n, k) == expected);
            }
        }
    }
}

TEST_CASE("no permutation has n-1 fixed points") {
    for (int n = 2; n <= 12; ++n) CHECK(sphere_count(Metric::Hamming, n, n - 1) == 0);
}

TEST_CASE("row sums are n!") {
    for (Metric m : {Metric::Hamming, Metric::KendallTau, Metric::Cayley}) {
        const auto table = build_count_table(m, 12);
        for (int n = 1; n <= 12; ++n) {
            BigInt sum = 0;
            for (const auto& v : table.rows[static_cast<std::size_t>(n)]) sum += v;
            CHECK(sum == factorial_big(n));
        }
    }
}

TEST_CASE("Mahonian rows are symmetric") {
    for (int n = 1; n <= 9; ++n) {
        const long long kmax = static_cast<long long>(n) * (n - 1) / 2;
        const auto row = mahonian_row(n, kmax);
        for (long long k = 0; k <= kmax; ++k)
            CHECK(row[static_cast<std::size_t>(k)] == row[static_cast<std::size_t>(kmax - k)]);
    }
}

TEST_CASE("fixed-point recursion for the Hamming counts") {
    // D_{2,2} = 1 via the k = 2 boundary case, and the full identity for
    // n up to 12
    CHECK(sphere_count(Metric::Hamming, 2, 2) == 1);
    for (int n = 2; n <= 12; ++n) CHECK(hamming_recursion_holds(n));
}

TEST_CASE("count table accessor conventions") {
    const auto table = build_count_table(Metric::KendallTau, 6);
    CHECK(table.at(3, 1) == 2);
    CHECK(table.at(3, -1) == 0);
    CHECK(table.at(3, 99) == 0);
    CHECK(table.at(99, 0) == 0);
    const auto capped = build_count_table(Metric::KendallTau, 6, 2);
    CHECK(capped.at(6, 2) == mahonian_number(6, 2));
    CHECK(capped.at(6, 3) == 0);  // beyond the cap, not stored
}

TEST_CASE("Stirling numbers of the first kind") {
    CHECK(stirling_first(6, 3) == 225);
    CHECK(stirling_first(5, 5) == 1);
    CHECK(stirling_first(5, 0) == 0);
    for (int n = 1; n <= 7; ++n) {
        const auto brute = oracle::brute_sphere_counts(Metric::Cayley, n);
        for (long long k = 1; k <= n; ++k) {
            const auto it = brute.find(k);
            CHECK(stirling_first(n, k) == (it == brute.end() ? BigInt(0) : it->second));
        }
    }
}
