#include "stagecast/qoi16.hpp"

#include <array>

namespace stagecast::qoi16 {

namespace {

constexpr uint8_t kTagIndex = 0x00;  // 00xxxxxx
constexpr uint8_t kTagDiff6 = 0x40;  // 01xxxxxx
constexpr uint8_t kTagRun = 0x80;    // 10xxxxxx
constexpr uint8_t kTagDiff14 = 0xC0; // 11xxxxxx
constexpr uint8_t kLiteralByte = 0xFF;

constexpr int kRunLimit = 64;
constexpr size_t kMaxPixels = 1u << 26; // 64 Mpx sanity cap

struct State {
    uint16_t prev = 0;
    std::array<uint16_t, 64> index{};

    void push(uint16_t v) {
        prev = v;
        index[hash_bucket(v)] = v;
    }
};

void put_u32be(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

} // namespace

std::vector<uint8_t> encode(const DepthImage& img) {
    if (img.width() <= 0 || img.height() <= 0)
        throw CodecError(ErrorKind::bad_dimensions, "qoi16: cannot encode empty raster");

    const size_t n = img.size();
    std::vector<uint8_t> out;
    out.reserve(kHeaderSize + n + kEndMarkerSize);

    out.insert(out.end(), {'q', 'o', '1', '6'});
    put_u32be(out, static_cast<uint32_t>(img.width()));
    put_u32be(out, static_cast<uint32_t>(img.height()));
    out.push_back(0);
    out.push_back(0);

    State st;
    int run = 0;
    const uint16_t* px = img.data();
    for (size_t i = 0; i < n; ++i) {
        uint16_t v = px[i];
        if (v == st.prev) {
            if (++run == kRunLimit) {
                out.push_back(static_cast<uint8_t>(kTagRun | (kRunLimit - 1)));
                run = 0;
            }
            st.push(v);
            continue;
        }
        if (run > 0) {
            out.push_back(static_cast<uint8_t>(kTagRun | (run - 1)));
            run = 0;
        }
        uint8_t bucket = hash_bucket(v);
        if (st.index[bucket] == v) {
            out.push_back(static_cast<uint8_t>(kTagIndex | bucket));
            st.push(v);
            continue;
        }
        // Wrapped signed delta, so small steps across 0/65535 stay cheap.
        uint16_t d16 = static_cast<uint16_t>(v - st.prev);
        int32_t delta = (d16 < 0x8000) ? d16 : static_cast<int32_t>(d16) - 0x10000;
        if (delta >= -32 && delta <= 31) {
            out.push_back(static_cast<uint8_t>(kTagDiff6 | (delta + 32)));
        } else if (delta >= -8192 && delta <= 8191 && delta + 8192 != 0x3FFF) {
            // biased == 0x3FFF would encode as 0xFF 0xFF, the literal marker
            uint32_t biased = static_cast<uint32_t>(delta + 8192);
            out.push_back(static_cast<uint8_t>(kTagDiff14 | (biased >> 8)));
            out.push_back(static_cast<uint8_t>(biased & 0xFF));
        } else {
            out.push_back(kLiteralByte);
            out.push_back(kLiteralByte);
            out.push_back(static_cast<uint8_t>(v >> 8));
            out.push_back(static_cast<uint8_t>(v & 0xFF));
        }
        st.push(v);
    }
    if (run > 0)
        out.push_back(static_cast<uint8_t>(kTagRun | (run - 1)));

    out.insert(out.end(), {0, 0, 0, 0, 0, 0, 0, 1});
    return out;
}

DepthImage decode(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderSize)
        throw CodecError(ErrorKind::truncated, "qoi16: input shorter than header");
    if (bytes[0] != 'q' || bytes[1] != 'o' || bytes[2] != '1' || bytes[3] != '6')
        throw CodecError(ErrorKind::bad_magic, "qoi16: bad magic");

    auto u32be = [&](size_t off) {
        return (static_cast<uint32_t>(bytes[off]) << 24) | (static_cast<uint32_t>(bytes[off + 1]) << 16) |
               (static_cast<uint32_t>(bytes[off + 2]) << 8) | static_cast<uint32_t>(bytes[off + 3]);
    };
    uint32_t w = u32be(4);
    uint32_t h = u32be(8);
    if (w == 0 || h == 0 || static_cast<uint64_t>(w) * h > kMaxPixels)
        throw CodecError(ErrorKind::bad_dimensions, "qoi16: bad dimensions");

    const size_t n = static_cast<size_t>(w) * h;
    DepthImage img(static_cast<int>(w), static_cast<int>(h));
    uint16_t* px = img.data();

    State st;
    size_t pos = kHeaderSize;
    size_t filled = 0;
    const size_t end = bytes.size();

    auto need = [&](size_t k) {
        if (pos + k > end)
            throw CodecError(ErrorKind::truncated, "qoi16: truncated chunk stream");
    };

    while (filled < n) {
        need(1);
        uint8_t b = bytes[pos++];
        uint16_t v;
        switch (b >> 6) {
        case 0: // INDEX
            v = st.index[b & 0x3F];
            break;
        case 1: // DIFF6
            v = static_cast<uint16_t>(st.prev + (static_cast<int>(b & 0x3F) - 32));
            break;
        case 2: { // RUN
            int len = (b & 0x3F) + 1;
            if (filled + static_cast<size_t>(len) > n)
                throw CodecError(ErrorKind::pixel_overrun, "qoi16: run past end of raster");
            for (int i = 0; i < len; ++i)
                px[filled++] = st.prev;
            st.push(st.prev);
            continue;
        }
        default: { // DIFF14 or LITERAL
            need(1);
            uint8_t nxt = bytes[pos++];
            if (b == kLiteralByte && nxt == kLiteralByte) {
                need(2);
                v = static_cast<uint16_t>((bytes[pos] << 8) | bytes[pos + 1]);
                pos += 2;
            } else {
                uint32_t biased = (static_cast<uint32_t>(b & 0x3F) << 8) | nxt;
                v = static_cast<uint16_t>(st.prev + (static_cast<int32_t>(biased) - 8192));
            }
            break;
        }
        }
        px[filled++] = v;
        st.push(v);
    }

    if (pos + kEndMarkerSize > end)
        throw CodecError(ErrorKind::missing_end_marker, "qoi16: missing end marker");
    static constexpr uint8_t marker[8] = {0, 0, 0, 0, 0, 0, 0, 1};
    for (size_t i = 0; i < kEndMarkerSize; ++i)
        if (bytes[pos + i] != marker[i])
            throw CodecError(ErrorKind::missing_end_marker, "qoi16: corrupt end marker");
    pos += kEndMarkerSize;
    if (pos != end)
        throw CodecError(ErrorKind::trailing_data, "qoi16: trailing bytes after end marker");

    return img;
}

} // namespace stagecast::qoi16
