#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace cyberlang {

// Length-prefixed wire format, one frame per message:
//
//   offset  size  field
//   0       4     magic "CYBL"
//   4       1     protocol version (1)
//   5       1     message type
//   6       4     payload length, big-endian
//   10      n     payload bytes (UTF-8 JSON or statement text)
//
// The 16 MiB payload cap bounds what a peer can make us buffer.
inline constexpr char kFrameMagic[4] = {'C', 'Y', 'B', 'L'};
inline constexpr std::uint8_t kProtocolVersion = 1;
inline constexpr std::size_t kFrameHeaderSize = 10;
inline constexpr std::size_t kMaxPayloadSize = 16u * 1024 * 1024;

enum class MsgType : std::uint8_t {
    Statement = 0x01,
    Delivery = 0x02,
    ContextUpdate = 0x03,
    AmbiguityReport = 0x10,
    ExplicitationRequest = 0x11,
    ExplicitationResponse = 0x12,
    MetaMarker = 0x13,
    Proposal = 0x14,
    Accept = 0x15,
    Reject = 0x16,
    Error = 0x7F,
};

bool is_known_msg_type(std::uint8_t byte) noexcept;
std::string_view msg_type_name(MsgType type) noexcept;

struct Frame {
    MsgType type = MsgType::Statement;
    std::string payload;

    bool operator==(const Frame&) const = default;
};

// Serialises one frame. Throws Error(OversizePayload) above the cap.
std::string encode_frame(const Frame& frame);

// The buffer holds a frame prefix; at least `total` bytes are needed
// before decode can say more.
struct NeedMoreBytes {
    std::size_t total;
};

struct DecodedFrame {
    Frame frame;
    std::size_t consumed; // bytes of the buffer this frame used
};

// Incremental decode of the buffer's first frame. Trailing bytes beyond
// the first frame are ignored (consumed says where it ended). Corruption
// throws: BadMagic, UnsupportedVersion, OversizePayload, or
// ProtocolViolation for an unknown message type.
std::variant<DecodedFrame, NeedMoreBytes> decode_frame(std::string_view buffer);

} // namespace cyberlang
