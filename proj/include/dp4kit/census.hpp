#pragma once

#include <cstdint>
#include <vector>

#include "dp4kit/fibration.hpp"
#include "dp4kit/pencil.hpp"

namespace dp4kit {

// Evaluation budget: DP4KIT_BUDGET if set, else 1e9.
double default_budget();

// #X_t(F_{q^k}) for t in the model field.
std::uint64_t fiber_point_count(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1, int k,
                                double budget = 0, bool force = false);

struct SectionSearchOptions {
  int degree = 0;  // search all degrees 0..degree
  int threads = 1;
  double budget = 0;  // 0: default_budget()
  bool force = false;
};

struct SectionSearchResult {
  std::vector<SectionCandidate> sections;  // canonical, sorted
  double candidates = 0;                   // projective coefficient vectors examined
  int sample_field_degree = 1;
};

// Candidate count for a search up to the given degree.
double section_search_space(const FibrationModel& m, int degree);
SectionSearchResult section_search(const FibrationModel& m, const SectionSearchOptions& o);

// alpha + degree; throws ValidationError unless the section verifies.
int section_height(const FibrationModel& m, const SectionCandidate& s);

struct FiberCount {
  FieldElement t0, t1;
  std::uint64_t count = 0;
  bool singular = false;  // Delta vanishes at t
};

struct SectionRecord {
  SectionCandidate section;
  int height = 0;
};

struct CensusOptions {
  int degree = 0;
  int k = 1;  // fiber counts over F_{q^k}
  int threads = 1;
  bool force = false;
  bool fiber_counts = true;
  bool sections = true;
  double budget = 0;
};

struct CensusReport {
  std::vector<FiberCount> fibers;  // every t in P^1 of the model field
  std::vector<SectionRecord> sections;
  double search_space = 0;
  double elapsed_ms = 0;
};

CensusReport run_census(const FibrationModel& m, const CensusOptions& o);

struct BasePoint {
  Vec coords;  // normalized, over F_{q^k}
  int field_degree = 1;
};

struct BasePointResult {
  std::vector<BasePoint> points;  // sorted by (field_degree, coords)
  bool multiplicity_free = false;
  int geometric_points = 0;  // distinct points over the closure
  int working_degree = 1;    // extension used for the linear algebra
};

// Common zeros of four quadrics in P^4 (symmetric 5x5 matrices) over
// F_{q^k}, k <= k_max.  Requires a finite base locus.
BasePointResult base_points(const std::vector<Matrix>& quadrics, int k_max);

struct Figure1Line {
  Line line;
  Vec incidence;  // the point of the line on the base curve
  SectionCandidate section;
};

struct Figure1Result {
  std::vector<Figure1Line> accepted;
  std::uint64_t lines_in_quadric = 0;
  std::uint64_t disjoint = 0;
  std::uint64_t bisecant = 0;  // two points of C, tangent included
  bool all_verified = false;
};

// Case 1 odd n = 0 models: X = Bl_C(Q) with Q the (0,2) form and C cut by
// the two t-coefficients of the (1,2) form.  Lines in Q over F_q meeting C
// exactly once give sections of degree 1.
Figure1Result figure1_d1_check(const FibrationModel& m, double budget = 0, bool force = false);

}  // namespace dp4kit
