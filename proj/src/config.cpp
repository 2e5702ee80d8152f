#include "lrperc/config.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lrperc/errors.hpp"
#include "lrperc/rng.hpp"

namespace lrperc {

bool Configuration::has_long_edge(long x, long y) const {
    if (x > y)
        std::swap(x, y);
    return std::binary_search(long_edges.begin(), long_edges.end(), std::make_pair(x, y));
}

void Configuration::validate() const {
    if (L < 1)
        throw DomainError("configuration needs L >= 1");
    if (nn_open.size() != static_cast<std::size_t>(2 * L))
        throw DomainError("nn bitmap has wrong length");
    for (std::size_t i = 0; i < long_edges.size(); ++i) {
        auto [x, y] = long_edges[i];
        if (x < -L || y > L || y - x < 2)
            throw DomainError("long edge out of range or too short");
        if (i > 0 && !(long_edges[i - 1] < long_edges[i]))
            throw DomainError("long edges not strictly sorted");
    }
}

Configuration make_empty_configuration(long L) {
    Configuration c;
    c.L = L;
    c.nn_open.assign(static_cast<std::size_t>(2 * L), 0);
    return c;
}

long edge_count(long L) {
    const long n = 2 * L + 1; // vertices
    return n * (n - 1) / 2;
}

namespace {

// Enumerate the ordered long-edge list for [-L, L]: for each left endpoint x,
// all y >= x+2. Used by both the naive sampler and the enumerator so edge
// order is consistent.
template <typename F> void for_each_long_edge(long L, F&& f) {
    for (long x = -L; x <= L - 2; ++x)
        for (long y = x + 2; y <= L; ++y)
            f(x, y);
}

} // namespace

Configuration sample_configuration(const ModelParams& model, long L,
                                   std::uint64_t seed, SampleMode mode) {
    if (L < 1)
        throw DomainError("L >= 1 required");
    Configuration c = make_empty_configuration(L);
    Rng rng(seed);
    for (long i = -L; i < L; ++i)
        c.set_nn(i, rng.bernoulli(model.p));
    if (mode == SampleMode::naive) {
        for_each_long_edge(L, [&](long x, long y) {
            const double d = static_cast<double>(y - x);
            const double q = std::exp(-model.beta / (d * d));
            if (rng.uniform() >= q)
                c.long_edges.emplace_back(x, y);
        });
    } else {
        // Per distance d, the closed probability is exactly exp(-beta/d^2),
        // so the gap to the next open edge is geometric and can be drawn as
        // floor(log U * d^2 / beta) without any log1p of the open prob.
        for (long d = 2; d <= 2 * L; ++d) {
            const double dd = static_cast<double>(d) * static_cast<double>(d);
            long x = -L;
            while (true) {
                const double u = rng.uniform_pos();
                const double g = std::floor(std::log(u) * dd / (-model.beta));
                if (g > static_cast<double>(2 * L)) // past the end for sure
                    break;
                x += static_cast<long>(g);
                if (x > L - d)
                    break;
                c.long_edges.emplace_back(x, x + d);
                x += 1;
            }
        }
        std::sort(c.long_edges.begin(), c.long_edges.end());
    }
    return c;
}

std::vector<std::pair<Configuration, double>>
enumerate_all_configurations(const ModelParams& model, long L) {
    const long ne = edge_count(L);
    if (ne > 24)
        throw TooLarge("enumeration limited to 24 edges");
    struct Edge {
        long x, y;
        double p;
    };
    std::vector<Edge> edges;
    for (long i = -L; i < L; ++i)
        edges.push_back({i, i + 1, model.p});
    for_each_long_edge(L, [&](long x, long y) {
        edges.push_back({x, y, edge_open_probability(x, y, model)});
    });
    std::vector<std::pair<Configuration, double>> out;
    out.reserve(1ull << edges.size());
    for (std::uint64_t mask = 0; mask < (1ull << edges.size()); ++mask) {
        Configuration c = make_empty_configuration(L);
        double prob = 1.0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const bool open = (mask >> e) & 1ull;
            prob *= open ? edges[e].p : 1.0 - edges[e].p;
            if (open) {
                if (edges[e].y - edges[e].x == 1)
                    c.set_nn(edges[e].x, true);
                else
                    c.long_edges.emplace_back(edges[e].x, edges[e].y);
            }
        }
        std::sort(c.long_edges.begin(), c.long_edges.end());
        out.emplace_back(std::move(c), prob);
    }
    return out;
}

void write_configuration(std::ostream& os, const Configuration& config) {
    os << "lrperc-config v1 L=" << config.L << "\n";
    os << "nn ";
    for (std::uint8_t b : config.nn_open)
        os << (b ? '1' : '0');
    os << "\n";
    for (auto [x, y] : config.long_edges)
        os << "e " << x << " " << y << "\n";
}

Configuration read_configuration(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ParseError("empty configuration stream");
    long L = 0;
    {
        std::istringstream hs(line);
        std::string magic, ver, ltok;
        hs >> magic >> ver >> ltok;
        if (magic != "lrperc-config" || ver != "v1" || ltok.rfind("L=", 0) != 0)
            throw ParseError("bad configuration header: " + line);
        try {
            L = std::stol(ltok.substr(2));
        } catch (const std::exception&) {
            throw ParseError("bad L in header: " + line);
        }
    }
    if (L < 1)
        throw ParseError("L must be >= 1");
    Configuration c = make_empty_configuration(L);
    if (!std::getline(is, line) || line.rfind("nn ", 0) != 0)
        throw ParseError("missing nn line");
    const std::string bits = line.substr(3);
    if (bits.size() != static_cast<std::size_t>(2 * L))
        throw ParseError("nn bitstring has wrong length");
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw ParseError("nn bitstring must be 0/1");
        c.nn_open[i] = bits[i] == '1' ? 1 : 0;
    }
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream es(line);
        std::string tag;
        long x, y;
        es >> tag >> x >> y;
        if (tag != "e" || es.fail())
            throw ParseError("bad edge line: " + line);
        c.long_edges.emplace_back(x, y);
    }
    std::sort(c.long_edges.begin(), c.long_edges.end());
    c.validate();
    return c;
}

} // namespace lrperc
