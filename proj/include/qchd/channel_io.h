#ifndef QCHD_CHANNEL_IO_H
#define QCHD_CHANNEL_IO_H

#include <filesystem>
#include <string>

#include "qchd/channels.h"
#include "qchd/errors.h"
#include "qchd/strategies.h"

namespace qchd {

// File formats (JSON, complex entries as [re, im]):
//   channel:       {"in_dim": d, "out_dim": e, "kraus": [matrix, ...]}
//   cq-channel:    {"alphabet": [label, ...], "out_dim": e, "states": {label: matrix}}
//   classical pair {"W": [[...], ...], "Wbar": [[...], ...]}
// A matrix is a list of rows. Loaders re-check every invariant of the type they
// build; violations surface as the type's own error with the residual.

/// Malformed or structurally inconsistent input file.
struct InvalidFile : Error {
    using Error::Error;
};

KrausChannel parse_channel(const std::string &json_text);
CqChannel parse_cq_channel(const std::string &json_text);
ClassicalChannelPair parse_classical_pair(const std::string &json_text);

std::string channel_to_json(const KrausChannel &ch);
std::string cq_channel_to_json(const CqChannel &ch);

KrausChannel load_channel(const std::filesystem::path &path);
CqChannel load_cq_channel(const std::filesystem::path &path);
ClassicalChannelPair load_classical_pair(const std::filesystem::path &path);

}  // namespace qchd

#endif
