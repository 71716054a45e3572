#pragma once

namespace demachar {

/// Participates in every cache digest; bump on any change that can alter
/// emitted bytes.
inline constexpr const char* kEngineVersion = "demachar-1.0.0";

}  // namespace demachar
