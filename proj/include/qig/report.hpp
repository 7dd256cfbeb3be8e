#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qig {

/// One violated law with a concrete witness.
struct Violation {
  std::string law;
  std::string witness;
};

/// Outcome of a validation pass. Empty means the structure is valid.
struct Report {
  std::vector<Violation> items;

  bool ok() const { return items.empty(); }

  void add(std::string law, std::string witness) {
    items.push_back({std::move(law), std::move(witness)});
  }

  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& v : other.items) items.push_back({prefix + v.law, v.witness});
  }

  std::string to_string() const {
    if (items.empty()) return "valid\n";
    std::string s;
    for (const auto& v : items) s += v.law + ": " + v.witness + "\n";
    return s;
  }
};

/// Bad input: malformed documents, unknown families, exceeded size caps. Exit code 2.
struct InputError : std::runtime_error {
  std::string code;
  InputError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

/// Failed mathematical check: axiom violation, missing isomorphism, unmet
/// precondition of a construction. Exit code 1.
struct CheckError : std::runtime_error {
  std::string code;
  CheckError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline InputError parse_error(const std::string& m) { return InputError("ParseError", m); }
inline InputError schema_error(const std::string& m) { return InputError("SchemaError", m); }
inline InputError cap_error(const std::string& m) { return InputError("SizeCapExceeded", m); }

/// Size caps for the exhaustive searches, settable from the CLI.
struct Caps {
  std::uint64_t max_subsets = 1ull << 14;  // subset enumerations (completeness, downset quantale)
  int max_arrows = 24;                     // groupoid isomorphism search
  int max_frame = 1024;                    // frame/quantale carrier size for law checks
};

}  // namespace qig
