#pragma once

#include <map>
#include <string>
#include <vector>

#include "nichols/roots.hpp"

namespace nichols {

// Two validity layers govern a preset at its parameter q:
//
//  * defined: the named root data makes sense -- every vertex label p_ii
//    differs from 1 and every root height N_beta is at least 2.  All formal
//    counting methods below (recursions, closed forms, and the oracle in
//    roots.hpp) evaluate exactly when this holds.
//  * valid: additionally the Cartan matrix is recoverable from the braiding,
//    i.e. |a_ij| < ord(p_ii) for all i != j (else PresetNotFaithful).  Only
//    then do the formal counts describe the Nichols algebra of the preset's
//    braiding, so verify_dimensions and the CLI insist on it.  In terms of
//    N = ord(q): simply laced families need N >= 2, B/C/F need N >= 3, G
//    needs N >= 4.
//
// The gap is real: at N = 2 the G_2 braiding coincides with the A_2 one
// (q^{-3} = q^{-1}), so the formal G_2 table value N^6 - 1 = 63 is defined
// but does not equal the dimension of the actual braided Lie algebra (7).
bool preset_defined_at(const CartanPreset& preset);
bool preset_valid_at(const CartanPreset& preset);
void require_valid_at(const CartanPreset& preset);

// dim L(V) for diagrams whose edges form the consecutive chain 1-2-...-n,
// via the interval recursion
//   L[i,j] = B[i,j] - sum_{k=i..j-2} L[i,k] B[k+2,j]
//                   + sum_{k=i..j-3} L[i,k] B[k+3,j]
// where B[i,j] = (product of N_beta over roots supported inside [i,j]) - 1
// and L[i,j] = B[i,j] = 0 for i > j. Throws NotAPath on branched diagrams.
Integer path_recursion(const CartanPreset& preset);

// The mirrored expansion of the same quantity,
//   L'[i,j] = B[i,j] - sum_{k=i..j-2} B[i,k] L'[k+2,j]
//                    + sum_{k=i..j-3} B[i,k] L'[k+3,j],
// provably equal to path_recursion; exposed so the equality is testable.
Integer path_recursion_mirrored(const CartanPreset& preset);

// dim L(V) for the D family:
//   L[1,n] = B[1,n] - L[1,n-3] B[n-1,n]
//          - sum_{i=1..n-4} L[1,i] (B[i+2,n] - B[i+3,n])
//          - B[n-1,n-1] B[n,n]
// with prefix values L[1,i] computed by the chain recursion and B[n-1,n]
// taken on the disconnected two-tip subdiagram. Rank 3 delegates to the A_3
// chain (same braiding up to relabelling). Throws NotDType off the family.
Integer dtype_recursion(const CartanPreset& preset);

// Literal evaluation of the printed closed-form dimension expression for the
// preset's family: nested alternating sums for A chains, parity-split
// expressions for B/C/F, a divisibility split for G_2, single expressions for
// D and E_6/E_7/E_8. Throws UnsupportedPreset for families outside the table.
Integer closed_form(const CartanPreset& preset);

// One method whose value disagrees with the inclusion-exclusion oracle.
struct MethodDiscrepancy {
  std::string method;
  Integer expected;  // oracle value
  Integer got;       // the method's value
};

// Cross-validation record for one preset: every applicable method, pairwise
// agreement against the oracle (the designated ground truth), and any
// discrepancies as data rather than errors.
struct DimensionReport {
  CartanPreset preset;
  Integer dim_B;
  std::map<std::string, Integer> methods;  // oracle / recursion / closed_form / engine
  bool agree = true;
  std::vector<MethodDiscrepancy> errata;
};

struct VerifyOptions {
  bool engine = true;                 // allow full Lie-closure runs at all
  unsigned engine_cutoff_budget = 8;  // run the engine when full_cutoff fits
  int engine_rank_budget = 2;         //   and the rank fits
  bool force_engine = false;          // run the engine regardless of budget
};

// Runs the oracle (always), the applicable recursion, the closed form, and
// optionally the engine's full Lie closure, then compares everything against
// the oracle. Preset must be valid (not merely defined) at its parameter.
DimensionReport verify_dimensions(const CartanPreset& preset,
                                  const VerifyOptions& options = {});

// Deterministic JSON: {"preset","N","dim_B","methods","agree","errata"},
// dimensions rendered as decimal strings (they exceed 64 bits quickly).
std::string report_to_json_text(const DimensionReport& report);

}  // namespace nichols
