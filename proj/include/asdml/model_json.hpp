#pragma once

#include <string>

#include "asdml/model.hpp"

namespace asdml {

// Versioned JSON document; doubles use shortest round-trip encoding, so
// serialize/parse is exact for every parameter.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

}  // namespace asdml
