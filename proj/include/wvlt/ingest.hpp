#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace wvlt {

enum class alphabet_mode { byte_raw, byte_effective, words };

inline std::optional<alphabet_mode> parse_alphabet(std::string_view s) {
    if(s == "byte") return alphabet_mode::byte_raw;
    if(s == "byte-effective") return alphabet_mode::byte_effective;
    if(s == "words") return alphabet_mode::words;
    return std::nullopt;
}

struct ingested_text {
    alphabet_mode mode = alphabet_mode::byte_raw;
    // bytes for the byte modes, token ids for words
    std::variant<std::vector<std::uint8_t>, std::vector<std::uint32_t>> symbols;
    // distinct symbols (256 for raw bytes)
    std::uint64_t sigma = 0;
    // words mode only: id -> token
    std::vector<std::string> tokens;
    std::size_t input_bytes = 0;

    std::size_t size() const {
        return std::visit([](const auto& v) { return v.size(); }, symbols);
    }

    // An empty input has no symbols; it is indexed as a one-symbol alphabet.
    std::uint64_t structure_sigma() const { return std::max<std::uint64_t>(1, sigma); }
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline ingested_text ingest_bytes(std::string_view data, alphabet_mode mode) {
    ingested_text out;
    out.mode = mode;
    out.input_bytes = data.size();
    switch(mode) {
    case alphabet_mode::byte_raw: {
        std::vector<std::uint8_t> v(data.begin(), data.end());
        out.symbols = std::move(v);
        out.sigma = 256;
        break;
    }
    case alphabet_mode::byte_effective: {
        std::array<int, 256> id;
        id.fill(-1);
        int next = 0;
        std::vector<std::uint8_t> v;
        v.reserve(data.size());
        for(char ch : data) {
            auto& slot = id[static_cast<unsigned char>(ch)];
            if(slot < 0) slot = next++;
            v.push_back(static_cast<std::uint8_t>(slot));
        }
        out.symbols = std::move(v);
        out.sigma = static_cast<std::uint64_t>(next);
        break;
    }
    case alphabet_mode::words: {
        std::unordered_map<std::string_view, std::uint32_t> ids;
        std::vector<std::uint32_t> v;
        std::size_t i = 0;
        while(i < data.size()) {
            while(i < data.size() && is_ascii_space(data[i])) ++i;
            const auto b = i;
            while(i < data.size() && !is_ascii_space(data[i])) ++i;
            if(b == i) break;
            const auto tok = data.substr(b, i - b);
            auto [it, fresh] = ids.try_emplace(tok, static_cast<std::uint32_t>(out.tokens.size()));
            if(fresh) out.tokens.emplace_back(tok);
            v.push_back(it->second);
        }
        out.symbols = std::move(v);
        out.sigma = out.tokens.size();
        break;
    }
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if(!in) throw io_error("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if(in.bad()) throw io_error("error reading " + path);
    return data;
}

inline ingested_text ingest_file(const std::string& path, alphabet_mode mode) {
    return ingest_bytes(read_file(path), mode);
}

} // namespace wvlt
