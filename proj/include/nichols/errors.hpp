#pragma once

#include <stdexcept>
#include <string>

namespace nichols {

// Base class for all typed failures so callers can catch the library as a whole.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic between values living in different cyclotomic fields. Every
// diagram fixes one modulus M; there is deliberately no lcm promotion.
struct ModulusMismatch : Error {
  ModulusMismatch(unsigned a, unsigned b)
      : Error("cyclotomic modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero cyclotomic number") {}
};

// A diagram vertex carries label p_ii = 1, outside the standing assumption.
struct VertexLabelOne : Error {
  int vertex;  // 1-based
  explicit VertexLabelOne(int v)
      : Error("vertex label p_" + std::to_string(v) + "," + std::to_string(v) + " equals 1"),
        vertex(v) {}
};

// Connectivity queried on the empty support set.
struct EmptySupport : Error {
  EmptySupport() : Error("support set is empty") {}
};

// Bracket (or a bracket-based identity) applied to a non-homogeneous element.
struct NonHomogeneousOperand : Error {
  NonHomogeneousOperand() : Error("operand is not homogeneous") {}
  explicit NonHomogeneousOperand(const std::string& what) : Error(what) {}
};

// A multidegree outside the engine's configured total-degree budget.
struct DegreeCutoffExceeded : Error {
  explicit DegreeCutoffExceeded(const std::string& what) : Error(what) {}
};

// A root vector of multiplicative height 1; such diagrams are rejected
// (mirrors the p_ii != 1 assumption at the level of root vectors).
struct HeightOne : Error {
  explicit HeightOne(const std::string& what) : Error(what) {}
};

// A Cartan preset instantiated at a parameter where the braiding no longer
// determines the Cartan matrix (|a_ij| >= ord(p_ii) for some pair), so the
// named root system does not describe B(V). Example: G_2 at N = 2, whose
// braiding coincides with the A_2 one because q^{-3} = q^{-1} at q = -1.
struct PresetNotFaithful : Error {
  explicit PresetNotFaithful(const std::string& what) : Error(what) {}
};

// Recursions only defined on path-shaped (chain) diagrams.
struct NotAPath : Error {
  explicit NotAPath(const std::string& what) : Error(what) {}
};

// Recursion only defined on D-type diagrams.
struct NotDType : Error {
  explicit NotDType(const std::string& what) : Error(what) {}
};

// No closed-form dimension expression for the requested preset.
struct UnsupportedPreset : Error {
  explicit UnsupportedPreset(const std::string& what) : Error(what) {}
};

// Malformed preset string / diagram file / word literal.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace nichols
