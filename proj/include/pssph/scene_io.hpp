#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pssph/scene.hpp"

namespace pssph {

nlohmann::json scene_to_json(const Scene& scene);

/// Parses a scene document, filling paper defaults for omitted keys (each
/// fill that changes behavior appends a notice). Does not validate; callers
/// run validate_scene.
Scene scene_from_json(const nlohmann::json& doc, std::vector<std::string>* notices = nullptr);

/// Loads, default-fills, and validates a scene file. Validation notices (and
/// default-fill notes) are appended to `notices` when given.
Scene load_scene(const std::string& path, std::vector<std::string>* notices = nullptr);

void save_scene(const Scene& scene, const std::string& path);

/// Applies a `key=value` or `section.key=value` override to the document.
/// The key must already exist (catches typos); values parse as JSON scalars.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace pssph
