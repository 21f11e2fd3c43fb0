#include "cyberlang/digest.hpp"

#include <openssl/evp.h>

#include "cyberlang/errors.hpp"

namespace cyberlang {

std::string sha256_hex(std::string_view bytes) {
    unsigned char raw[EVP_MAX_MD_SIZE];
    unsigned int raw_len = 0;
    const int ok = EVP_Digest(bytes.data(), bytes.size(), raw, &raw_len,
                              EVP_sha256(), nullptr);
    if (ok != 1)
        throw Error(ErrorCode::InvalidArgument, "SHA-256 computation failed");

    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.resize(static_cast<std::size_t>(raw_len) * 2);
    for (unsigned int i = 0; i < raw_len; ++i) {
        hex[2 * i] = kHex[raw[i] >> 4];
        hex[2 * i + 1] = kHex[raw[i] & 0x0F];
    }
    return hex;
}

} // namespace cyberlang
