#pragma once

#include "mackeylab/burnside.hpp"
#include "mackeylab/mackey.hpp"
#include "mackeylab/zhat.hpp"

namespace mackeylab {

// Thread-parallel versions of the heavy table builders.  Each one computes
// the same value as its serial counterpart, entry for entry; the serial
// functions stay around as the reference the tests compare against.  All of
// them fall back to a plain loop when built without OpenMP.

/// table_of_marks with the rows computed across threads.
MarksTable table_of_marks_parallel(const GroupContext& ctx);

/// burnside_ring_constants with the (i, j) pairs computed across threads.
RingConstants burnside_ring_constants_parallel(const GroupContext& ctx);

/// check_mackey_axioms with each stage fanned out over the subgroup classes.
/// Violations are merged back in class order, so the report is identical.
AxiomReport check_mackey_axioms_parallel(const MackeyFunctor& m);

/// Homology of the pair permutation module in every degree up to and
/// including max_degree, computed from the explicit resolution rather than
/// the closed form.  The serial variant is the reference; the other runs
/// the degrees across threads.
std::vector<ModInvariants> dbh_degree_table_serial(long n, const std::vector<long>& s,
                                                   const std::vector<long>& sp,
                                                   long max_degree);
std::vector<ModInvariants> dbh_degree_table(long n, const std::vector<long>& s,
                                            const std::vector<long>& sp, long max_degree);

}  // namespace mackeylab
