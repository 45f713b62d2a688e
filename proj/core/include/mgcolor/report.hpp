#pragma once

#include <vector>

#include "mgcolor/element_view.hpp"
#include "mgcolor/lottie_doc.hpp"
#include "mgcolor/occurrences.hpp"
#include "mgcolor/recolor.hpp"
#include "mgcolor/scene_palette.hpp"
#include "mgcolor/theme.hpp"

// JSON views shared by the CLI and the session service. Colors are lowercase
// hex throughout.
namespace mgcolor {

Json occurrences_json(const OccurrenceSet& set);
Json theme_json(const std::vector<ThemeSwatch>& swatches);
Json palette_json(const ScenePalette& palette);
Json elements_json(const std::vector<ElementEntry>& entries);
Json group_json(const ColorGroup& group);
Json mapping_json(const ColorMapping& mapping);
Json addresses_json(const std::vector<ColorAddress>& addresses);

}  // namespace mgcolor
