#pragma once

#include <string>
#include <string_view>

namespace cyberlang {

// Lowercase hex SHA-256 of the given bytes. This is the only hash used in
// the library: sign identity digests, interpretation digests exchanged
// during negotiation, and ledger context signatures all go through here.
std::string sha256_hex(std::string_view bytes);

} // namespace cyberlang
