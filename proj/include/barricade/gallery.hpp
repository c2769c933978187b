#pragma once

#include "barricade/scenario.hpp"
#include "barricade/separation.hpp"

#include <string>
#include <vector>

namespace barricade {

/// A canonical fixture: a scenario plus the recorded expected statuses
/// (matched as JSON subsets against the report) and, for the slice
/// truncations, the embedded sequence pairs with their exact gaps.
struct GalleryItem {
  std::string name;
  std::string anchor;  // short description of the classical construction
  Scenario scenario;
  Json expected;       // array, one pattern per task
  std::vector<GapStep> embedded_pairs;
};

std::vector<std::string> gallery_names();

/// Throws std::out_of_range for unknown names.
GalleryItem gallery_item(const std::string& name, int n = 6);

struct GalleryOutcome {
  Json report;
  bool matched = true;
  std::vector<std::string> mismatches;
};

GalleryOutcome run_gallery_item(const std::string& name, const RunOptions& opt = {}, int n = 6);

}  // namespace barricade
