#include "critwin/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <ostream>
#include <tuple>

#include "json.hpp"

namespace critwin {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& os, std::vector<ResultRow> rows) {
    const auto key = [](const ResultRow& r) {
        return std::tuple(r.experiment, r.gamma, r.n, r.alpha, r.beta, r.kernel, r.statistic, r.k,
                          r.seed);
    };
    std::sort(rows.begin(), rows.end(),
              [&](const ResultRow& a, const ResultRow& b) { return key(a) < key(b); });
    os << "experiment,gamma,n,alpha,beta,kernel,seed,k,statistic,estimate,half_width,n_reps,"
          "censored_fraction,flag\n";
    for (const ResultRow& r : rows) {
        os << r.experiment << ',' << format_double(r.gamma) << ',' << r.n << ','
           << format_double(r.alpha) << ',' << format_double(r.beta) << ',' << r.kernel << ',';
        if (r.seed >= 0) os << r.seed;
        os << ',';
        if (r.k >= 0) os << r.k;
        os << ',' << r.statistic << ',' << format_double(r.estimate) << ','
           << format_double(r.half_width) << ',' << r.n_reps << ','
           << format_double(r.censored_fraction) << ',' << r.flag << '\n';
    }
}

void write_summary_json(std::ostream& os, const RunSummary& s) {
    nlohmann::json j;
    j["experiment"] = s.experiment;
    j["config"] = s.config_echo;
    j["content_hash"] = s.content_hash;
    j["wall_time_s"] = s.wall_time_s;
    j["n_rows"] = s.n_rows;
    j["outputs"] = s.outputs;
    os << j.dump(2) << "\n";
}

namespace {

// Compact SHA-1 (FIPS 180-1), sufficient for content addressing of inputs.
struct Sha1 {
    std::uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
    std::uint64_t total = 0;
    std::array<std::uint8_t, 64> block{};
    std::size_t fill = 0;

    static std::uint32_t rol(std::uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

    void process(const std::uint8_t* p) {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
                   (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t t = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = t;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
    }

    void update(const void* data, std::size_t len) {
        const std::uint8_t* p = static_cast<const std::uint8_t*>(data);
        total += len;
        while (len > 0) {
            const std::size_t take = std::min(len, block.size() - fill);
            std::memcpy(block.data() + fill, p, take);
            fill += take;
            p += take;
            len -= take;
            if (fill == block.size()) {
                process(block.data());
                fill = 0;
            }
        }
    }

    std::string hexdigest() {
        const std::uint64_t bits = total * 8;
        const std::uint8_t pad = 0x80;
        update(&pad, 1);
        const std::uint8_t zero = 0;
        while (fill != 56) update(&zero, 1);
        std::uint8_t lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
        update(lenb, 8);
        static const char* hex = "0123456789abcdef";
        std::string out;
        for (const std::uint32_t v : h)
            for (int s = 28; s >= 0; s -= 4) out.push_back(hex[(v >> s) & 0xF]);
        return out;
    }
};

}  // namespace

std::string git_blob_sha1(const std::string& content) {
    Sha1 sha;
    const std::string header = "blob " + std::to_string(content.size());
    sha.update(header.data(), header.size());
    const char nul = '\0';
    sha.update(&nul, 1);
    sha.update(content.data(), content.size());
    return sha.hexdigest();
}

}  // namespace critwin
