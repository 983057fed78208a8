// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <stdexcept>
#include <string>

namespace orisvlc {

/// Bad scene or experiment configuration: unknown key, out-of-range value,
/// fixture that does not fit the room.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Degenerate geometry (coincident endpoints, non-unit orientation normal).
class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Matrix/vector dimensions do not agree.
class DimensionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A manifold projection hit an all-zero row or column.
class SingularProjectionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested enumeration exceeds the configured complexity limit.
class LimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while writing a report or dump.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace orisvlc
