#pragma once

#include "salem/linear_forms.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace salem {

// Integers below (A d)^n whose base-(A d) digits all lie in [0, d) and whose
// digit vector has squared norm k. Sorted ascending.
std::vector<std::int64_t> sphere_set(int d, int n, int A, std::int64_t k);

// Number of digit vectors in [0, d)^n for each squared norm 0..n(d-1)^2.
std::vector<std::int64_t> sphere_histogram(int d, int n);

struct SphereChoice {
  std::int64_t k0;
  std::vector<std::int64_t> elements;
};

// The most populated sphere; ties go to the smallest k.
SphereChoice best_sphere(int d, int n, int A);

enum class BehrendMode { FixedParams, SearchBest };

struct BehrendProvenance {
  std::int64_t N;
  int A;
  BehrendMode mode;
  int d;
  int n;
  std::int64_t k0;
  std::int64_t base;
  // N exp(-(A+4) sqrt(ln N)); only meaningful in the asymptotic regime.
  double cardinality_bound;
  bool bound_holds;
  bool bound_applicable;
};

struct AvoidingSet {
  std::vector<std::int64_t> elements;
  BehrendProvenance provenance;
};

AvoidingSet behrend_set(std::int64_t N, int A, BehrendMode mode = BehrendMode::SearchBest);

struct AvoidanceWitness {
  LinearForm form;
  std::vector<std::int64_t> tuple;  // (x0, x1, ..., xv)
};

inline constexpr double kDefaultTupleBudget = 1e9;

// Exhaustive search for a zero of some form in `family` with entries in Y
// and not all equal. Returns the lexicographically smallest such tuple for
// the first form (in family order) that has one.
std::optional<AvoidanceWitness> verify_avoidance(const std::vector<std::int64_t>& Y,
                                                 const std::vector<LinearForm>& family,
                                                 double tuple_budget = kDefaultTupleBudget);

}  // namespace salem
