#pragma once

// JSON persistence for channels and precoders.
//
// Channel schema: { "m_tx", "m_ue", "h_real", "h_imag", "omega", "beta" }
// with h_real / h_imag as row-major arrays of arrays. Precoders use the
// same layout with "p_real" / "p_imag" and no omega/beta. Numbers are
// written so that parsing restores every double bit-exactly.

#include <string>

#include "paretoprec/channel.hpp"
#include "paretoprec/metrics.hpp"

namespace paretoprec {

void save_channel(const ChannelInstance& c, const std::string& path);
ChannelInstance load_channel(const std::string& path);

void save_precoder(const Precoder& p, const std::string& path);
Precoder load_precoder(const std::string& path);

std::string channel_to_json(const ChannelInstance& c);
ChannelInstance channel_from_json(const std::string& text);
std::string precoder_to_json(const Precoder& p);
Precoder precoder_from_json(const std::string& text);

}  // namespace paretoprec
