#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfact/lamination.hpp"
#include "mfact/perm.hpp"
#include "mfact/tree.hpp"

namespace mfact::cli {

inline constexpr const char* kSchema = "mfact/1";

enum ExitCode : int { kPass = 0, kInvariantFailure = 1, kUsage = 2, kIoError = 3 };

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`; --out redirects results to a file instead.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Interchange helpers, also used by the tests.
nlohmann::ordered_json factorisation_to_json(const Factorisation& f);
Factorisation factorisation_from_json(const nlohmann::json& j);  // throws std::invalid_argument
nlohmann::ordered_json tree_to_json(const PlaneTree& t);
PlaneTree tree_from_json(const nlohmann::json& j);
nlohmann::ordered_json chord_to_json(const Chord& c);
Chord chord_from_json(const nlohmann::json& j);

// "3/7", "0.25" or "1" as an exact rational.
Rational parse_rational(const std::string& text);

struct VerifyResult {
  std::vector<std::pair<std::string, bool>> checks;
  bool passed() const;
};

// Full invariant suite on a parsed object; `kind` may be absent.
VerifyResult verify_factorisation(const Factorisation& f, const std::optional<std::string>& kind,
                                  const std::optional<PlaneTree>& tree);

}  // namespace mfact::cli
