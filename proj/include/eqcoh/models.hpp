#pragma once

#include "eqcoh/errors.hpp"
#include "eqcoh/gysin.hpp"
#include "eqcoh/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eqcoh {

/// Single point with torus rank n: one generator "1" in degree 0.
InvariantModel point(std::size_t n = 1);
/// Circle with trivial rank-n action: b0, b1 with d = c = 0.
InvariantModel circle_trivial(std::size_t n = 1);
/// Circle with free rotation: c(b1) = b0.
InvariantModel circle_free();
/// Rank-2 torus where only the second circle rotates: c_1 = 0, c_2(b1) = b0.
InvariantModel rema_adj();
/// Rotation 2-sphere with tangent weights +1 at N and -1 at S.
InvariantModel s2_rotation();
/// Rank-1 complex whose degree-1 cocycle `a` has c(a) = b with b not exact.
InvariantModel obstruction_pair();
/// 2-sphere on which the rank-n torus rotates through the character alpha.
InvariantModel c_alpha(const std::vector<std::int64_t>& alpha);

/// Resolves names like "point", "point(2)", "c_alpha(1,2)". Throws DataError listing
/// the available names when `name` is unknown.
InvariantModel builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// Raised when a model file parses but violates an axiom. The line points at the
/// offending section of the file.
class ValidationFailure : public Error {
 public:
  ValidationFailure(const std::string& what, ValidationReport report, int line)
      : Error(what), report_(std::move(report)), line_(line) {}
  const ValidationReport& report() const { return report_; }
  int line() const { return line_; }

 private:
  ValidationReport report_;
  int line_;
};

/// A map stored in a model file. `source` and `target` are "self" or "builtin:NAME".
struct MapEntry {
  std::string name;
  std::string source = "self";
  std::string target = "self";
  RationalMatrix pullback;
  bool proper = true;

  bool operator==(const MapEntry& o) const;
};

struct ModelFile {
  InvariantModel model;
  /// Free text kept verbatim; not interpreted.
  std::string description;
  std::vector<MapEntry> maps;

  bool operator==(const ModelFile&) const = default;
};

inline constexpr int kSchemaVersion = 1;

/// Parses and validates; `origin` names the text in diagnostics.
ModelFile parse_model_file(std::string_view text, const std::string& origin = "<text>");
std::string format_model_file(const ModelFile& f);

ModelFile load_model_file(const std::filesystem::path& path);
InvariantModel load_model(const std::filesystem::path& path);
void save_model(const InvariantModel& m, const std::filesystem::path& path);
void save_model_file(const ModelFile& f, const std::filesystem::path& path);

/// "builtin:NAME" or a file path.
ModelFile select_model(std::string_view selector);

/// The file's maps with "self" bound to `self`, plus the derivable ones: "id",
/// "collapse" (when the model has a constant class "one") and "incl_<point>" for
/// every fixed point with evaluation data.
std::vector<ModelMap> available_maps(const ModelPtr& self, const std::vector<MapEntry>& entries);

}  // namespace eqcoh
