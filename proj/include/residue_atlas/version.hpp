#pragma once

namespace residue_atlas {
inline constexpr const char* version = "0.1.0";
}
