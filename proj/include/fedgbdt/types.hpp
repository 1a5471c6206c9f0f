#pragma once
#include <cstdint>

namespace fedgbdt {

using SampleId = uint32_t;
// Participants are 1-based: P_1 .. P_l, with P_l the active/coordinating one.
using ParticipantId = uint32_t;

} // namespace fedgbdt
