#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace soergel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

/// A ring element that is not a unit was asked for its inverse.
struct NonInvertible : Error {
  std::string value;
  explicit NonInvertible(const std::string& v)
      : Error("non-invertible element: " + v), value(v) {}
};

/// A quantum number [k] required to be invertible is not, in the given ring.
struct NonInvertibleQuantumNumber : Error {
  int k;
  std::string value;
  NonInvertibleQuantumNumber(int k_, const std::string& v)
      : Error("NonInvertibleQuantumNumber([" + std::to_string(k_) + "] = " + v + ")"),
        k(k_), value(v) {}
};

struct ExactDivisionFailure : Error {
  explicit ExactDivisionFailure(const std::string& msg)
      : Error("exact division failed: " + msg) {}
};

/// hom_solve found a solution space whose dimension is not the expected one.
struct DimensionNotOne : Error {
  int dim;
  explicit DimensionNotOne(int d)
      : Error("DimensionNotOne(" + std::to_string(d) + ")"), dim(d) {}
};

struct NoSolution : Error {
  NoSolution() : Error("linear system has no solution") {}
};

struct NonUniqueSolution : Error {
  NonUniqueSolution() : Error("linear system has more than one solution") {}
};

struct SizeCapExceeded : Error {
  explicit SizeCapExceeded(const std::string& msg) : Error("size cap exceeded: " + msg) {}
};

/// One pass/fail line of a verification suite.
struct CheckLine {
  std::string suite;
  std::string identity;
  bool pass = false;
  std::string witness;  // smallest counterexample or extra info
};

struct Report {
  std::vector<CheckLine> lines;

  void add(std::string suite, std::string identity, bool pass, std::string witness = "") {
    lines.push_back({std::move(suite), std::move(identity), pass, std::move(witness)});
  }
  void absorb(const Report& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
  }
  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

}  // namespace soergel
