#ifndef SRG_VERIFIER_HPP
#define SRG_VERIFIER_HPP

#include <span>
#include <string>
#include <vector>

#include "srg/event.hpp"
#include "srg/process.hpp"

namespace srg {

/// One failed audit: which invariant, when, and what was seen.
struct violation {
    std::string invariant;
    std::int64_t t = 0;
    std::string detail;
};

/// Audits every structural invariant of the process state: conservation,
/// role census, stub separation, clear count, pairing, and stubedge index
/// agreement. Empty result means all hold.
std::vector<violation> check_invariants(const state_snapshot& snap);
std::vector<violation> check_invariants(const process_state& state);

/// Expected one-round deltas of (P, V1, V2, S1, S2, S3).
struct expectation_vector {
    std::array<double, 6> d{};
    double operator[](std::size_t i) const { return d[i]; }
};

/// Same deltas as exact rationals over a common denominator, so identities
/// like numer[0] + numer[1] + numer[2] == 0 can be checked without rounding.
struct exact_expectation {
    std::array<std::int64_t, 6> numer{};
    std::int64_t denom = 1;
    double operator[](std::size_t i) const {
        return static_cast<double>(numer[i]) / static_cast<double>(denom);
    }
    expectation_vector as_doubles() const {
        expectation_vector e;
        for (std::size_t i = 0; i < 6; ++i) e.d[i] = (*this)[i];
        return e;
    }
};

/// Brute-force oracle: enumerates every presented vertex and every internal
/// choice, applying the real transition function to copies of the state.
/// Never consults the closed-form expectations. Requires V >= 2.
exact_expectation expected_step_exact(const process_state& state);

/// Closed-form per-round expectations from the state's counters, with the
/// O(1/n) corrections dropped. For cap 2 the S2->S3 flow is absent.
expectation_vector expectation_formulas(std::int64_t n, const counter_set& c, int stub_cap);
expectation_vector expectation_formulas(const process_state& state);

/// True iff `order` visits n distinct vertices covering [0, n) and every
/// consecutive pair, wrap included, is an edge of `edges`.
bool verify_hamilton_cycle(std::span<const vertex_id> order, const edge_set& edges,
                           std::int64_t n);

/// Pooled stubend-hit statistic for one event class.
struct lemma_statistic {
    std::int64_t events = 0;
    std::int64_t edges = 0;   // pooled indicator count
    std::int64_t hits = 0;
    double empirical = 0.0;   // hits / edges
    double expected = 0.0;    // pooled mean of 2/V (or 1/V)
    double z = 0.0;           // (hits - sum p) / sqrt(sum p(1-p))
};

/// Streaming accumulator: per-event hit counts against the 2/V (C6 and
/// paired C3) or 1/V (isolated C3) reference rate.
class lemma_accumulator {
  public:
    explicit lemma_accumulator(lemma_class cls) : cls_(cls) {}
    lemma_class cls() const { return cls_; }
    void add(const event_record& rec);
    void merge(const lemma_accumulator& other);
    std::int64_t events() const { return events_; }
    lemma_statistic statistic(std::int64_t min_events = 10000) const;

  private:
    lemma_class cls_;
    std::int64_t events_ = 0;
    std::int64_t edges_ = 0;
    std::int64_t hits_ = 0;
    double sum_p_ = 0.0;      // sum over indicators of the per-event rate
    double sum_pq_ = 0.0;     // sum of p(1-p)
};

lemma_statistic lemma32_statistic(std::span<const event_record> log, lemma_class cls,
                                  std::int64_t min_events = 10000);

/// Fluid-limit right-hand side assembled case by case from the per-round
/// expectation sums (an independent route to the closed-form system used
/// by the integrator). Components ordered (p, v1, v2, s1, s2, s3).
std::array<double, 6> fluid_rates_from_cases(const std::array<double, 6>& y, int stub_cap);

} // namespace srg

#endif
