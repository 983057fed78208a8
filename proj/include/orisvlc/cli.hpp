// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

namespace orisvlc {

/// Full command-line front end: simulate | sweep-snr | sweep-oris | validate |
/// dump-channels. Exit codes: 0 ok, 2 config error, 3 numerical failure,
/// 4 I/O error.
int run_cli(int argc, const char* const* argv);

} // namespace orisvlc
