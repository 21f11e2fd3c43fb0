#include "cyberlang/frame.hpp"

#include <cstring>

#include "cyberlang/errors.hpp"

namespace cyberlang {

bool is_known_msg_type(std::uint8_t byte) noexcept {
    switch (static_cast<MsgType>(byte)) {
    case MsgType::Statement:
    case MsgType::Delivery:
    case MsgType::ContextUpdate:
    case MsgType::AmbiguityReport:
    case MsgType::ExplicitationRequest:
    case MsgType::ExplicitationResponse:
    case MsgType::MetaMarker:
    case MsgType::Proposal:
    case MsgType::Accept:
    case MsgType::Reject:
    case MsgType::Error:
        return true;
    }
    return false;
}

std::string_view msg_type_name(MsgType type) noexcept {
    switch (type) {
    case MsgType::Statement: return "statement";
    case MsgType::Delivery: return "delivery";
    case MsgType::ContextUpdate: return "context-update";
    case MsgType::AmbiguityReport: return "ambiguity-report";
    case MsgType::ExplicitationRequest: return "explicitation-request";
    case MsgType::ExplicitationResponse: return "explicitation-response";
    case MsgType::MetaMarker: return "meta-marker";
    case MsgType::Proposal: return "proposal";
    case MsgType::Accept: return "accept";
    case MsgType::Reject: return "reject";
    case MsgType::Error: return "error";
    }
    return "?";
}

std::string encode_frame(const Frame& frame) {
    if (frame.payload.size() > kMaxPayloadSize)
        throw Error(ErrorCode::OversizePayload,
                    "payload of " + std::to_string(frame.payload.size()) +
                        " bytes exceeds the 16 MiB cap");
    std::string out;
    out.reserve(kFrameHeaderSize + frame.payload.size());
    out.append(kFrameMagic, sizeof(kFrameMagic));
    out.push_back(static_cast<char>(kProtocolVersion));
    out.push_back(static_cast<char>(frame.type));
    const auto len = static_cast<std::uint32_t>(frame.payload.size());
    out.push_back(static_cast<char>((len >> 24) & 0xFF));
    out.push_back(static_cast<char>((len >> 16) & 0xFF));
    out.push_back(static_cast<char>((len >> 8) & 0xFF));
    out.push_back(static_cast<char>(len & 0xFF));
    out += frame.payload;
    return out;
}

std::variant<DecodedFrame, NeedMoreBytes> decode_frame(std::string_view buffer) {
    if (buffer.size() < kFrameHeaderSize)
        return NeedMoreBytes{kFrameHeaderSize};

    if (std::memcmp(buffer.data(), kFrameMagic, sizeof(kFrameMagic)) != 0)
        throw Error(ErrorCode::BadMagic, "frame does not start with CYBL");

    const auto version = static_cast<std::uint8_t>(buffer[4]);
    if (version != kProtocolVersion)
        throw Error(ErrorCode::UnsupportedVersion,
                    "unsupported protocol version " + std::to_string(version));

    const auto type_byte = static_cast<std::uint8_t>(buffer[5]);
    if (!is_known_msg_type(type_byte))
        throw Error(ErrorCode::ProtocolViolation,
                    "unknown message type byte " + std::to_string(type_byte));

    const std::uint32_t len =
        (static_cast<std::uint32_t>(static_cast<std::uint8_t>(buffer[6])) << 24) |
        (static_cast<std::uint32_t>(static_cast<std::uint8_t>(buffer[7])) << 16) |
        (static_cast<std::uint32_t>(static_cast<std::uint8_t>(buffer[8])) << 8) |
        static_cast<std::uint32_t>(static_cast<std::uint8_t>(buffer[9]));
    if (len > kMaxPayloadSize)
        throw Error(ErrorCode::OversizePayload,
                    "declared payload of " + std::to_string(len) +
                        " bytes exceeds the 16 MiB cap");

    const std::size_t total = kFrameHeaderSize + len;
    if (buffer.size() < total) return NeedMoreBytes{total};

    DecodedFrame out;
    out.frame.type = static_cast<MsgType>(type_byte);
    out.frame.payload.assign(buffer.data() + kFrameHeaderSize, len);
    out.consumed = total;
    return out;
}

} // namespace cyberlang
