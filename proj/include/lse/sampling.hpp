#pragma once

// Deterministic coprime sub-Nyquist sampling: the index set formed by three
// coprime undersampled ratios, the admissible window length for the sliding
// multitask model, and the slicing of a sample record into L overlapping
// windows of M consecutive samples each.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lse/signal_model.hpp"

namespace lse {

/// Three (optionally two) pairwise-coprime undersampling ratios, canonically
/// ordered 1 < p < q < r.  Two-ratio schemes are legal but less robust; the
/// CLI warns about them, the library simply accepts them.
struct CoprimeScheme {
    int p = 9;
    int q = 10;
    std::optional<int> r = 11;

    bool two_ratio() const noexcept { return !r.has_value(); }

    std::vector<int> ratios() const {
        std::vector<int> out{p, q};
        if (r) out.push_back(*r);
        return out;
    }

    void validate() const {
        if (p <= 1) throw std::invalid_argument("coprime scheme needs p > 1");
        if (q <= p) throw std::invalid_argument("coprime scheme needs p < q");
        if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
        if (r) {
            if (*r <= q) throw std::invalid_argument("coprime scheme needs q < r");
            if (std::gcd(p, *r) != 1 || std::gcd(q, *r) != 1) {
                throw std::invalid_argument("r must be coprime with p and q");
            }
        }
    }

    std::string to_string() const {
        std::string out = "(" + std::to_string(p) + "," + std::to_string(q);
        if (r) out += "," + std::to_string(*r);
        return out + ")";
    }
};

/// Sorted deduplicated union of all positive multiples of the scheme's ratios
/// up to and including `horizon`.
inline std::vector<long long> generate_indices(const CoprimeScheme& scheme, long long horizon) {
    scheme.validate();
    const std::vector<int> ratios = scheme.ratios();
    const int largest = ratios.back();
    if (horizon < largest) {
        throw std::invalid_argument("horizon must be at least the largest ratio");
    }
    std::set<long long> merged;
    for (const int ratio : ratios) {
        for (long long t = ratio; t <= horizon; t += ratio) merged.insert(t);
    }
    return {merged.begin(), merged.end()};
}

/// First `count` elements of the (infinite) coprime index set.
inline std::vector<long long> first_indices(const CoprimeScheme& scheme, std::size_t count) {
    scheme.validate();
    if (count == 0) return {};
    // Multiples of p alone reach `count` elements by horizon p*count, so this
    // horizon always suffices.
    const long long horizon =
        static_cast<long long>(scheme.p) * static_cast<long long>(count) + scheme.ratios().back();
    std::vector<long long> indices = generate_indices(scheme, horizon);
    indices.resize(count);
    return indices;
}

/// Element count of the index set up to `horizon` by inclusion-exclusion:
///   floor(h/p) + floor(h/q) + floor(h/r)
/// − floor(h/lcm(p,q)) − floor(h/lcm(p,r)) − floor(h/lcm(q,r))
/// + floor(h/lcm(p,q,r)).
inline long long inclusion_exclusion_count(const CoprimeScheme& scheme, long long horizon) {
    scheme.validate();
    if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
    const std::vector<int> ratios = scheme.ratios();
    long long count = 0;
    const std::size_t n = ratios.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        long long lcm = 1;
        int picked = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                lcm = std::lcm(lcm, static_cast<long long>(ratios[i]));
                ++picked;
            }
        }
        count += (picked % 2 == 1 ? 1 : -1) * (horizon / lcm);
    }
    return count;
}

/// Number of index-set elements per lcm(p,q,r) block; the window offset
/// pattern of the sliding tasks repeats with this period.
inline int pattern_period(const CoprimeScheme& scheme) {
    scheme.validate();
    long long lcm = std::lcm(static_cast<long long>(scheme.p), static_cast<long long>(scheme.q));
    if (scheme.r) lcm = std::lcm(lcm, static_cast<long long>(*scheme.r));
    return static_cast<int>(inclusion_exclusion_count(scheme, lcm));
}

/// One sliding window: M consecutive sub-Nyquist samples, with offsets
/// relative to the window's first time index.
struct Window {
    long long start_index = 0;                    ///< absolute time of first sample
    std::vector<int> offsets;                     ///< 0 = first entry, strictly increasing
    std::vector<std::complex<double>> values;     ///< the M samples
};

/// L overlapping windows feeding the multitask estimator.
struct TaskSet {
    int grid_n = 0;        ///< N, frequency grid size
    int window_len = 0;    ///< M, samples per window
    std::vector<Window> windows;

    int task_count() const noexcept { return static_cast<int>(windows.size()); }
};

namespace detail {

/// True when the offsets are pairwise distinct modulo N, i.e. the window's
/// sensing matrix has no duplicate rows.
inline bool offsets_distinct_mod(const std::vector<int>& offsets, int grid_n) {
    std::set<int> residues;
    for (const int offset : offsets) {
        const int residue = ((offset % grid_n) + grid_n) % grid_n;
        if (!residues.insert(residue).second) return false;
    }
    return true;
}

} // namespace detail

/// Largest admissible window length M for the first L sliding windows of the
/// scheme's index stream on an N-point grid, searched downward from
/// min(N, cap).
///
/// A window is admissible when its sensing matrix consists of M distinct rows
/// of the N-point DFT matrix.  The rows are indexed by the window offsets, so
/// every offset must fall inside one grid period (offset <= N-1); integer
/// offsets inside one period are automatically distinct mod N, and a residual
/// duplicate-row scan guards the remaining cases.  Searching with the span
/// condition alone would accept windows whose offsets wrap past N and merely
/// happen to avoid residue collisions — those do not correspond to rows of the
/// N-point DFT matrix, and accepting them yields window lengths larger than
/// the scheme actually supports.
inline int max_valid_window(const CoprimeScheme& scheme, int grid_n, int task_count,
                            int cap = 0) {
    scheme.validate();
    if (grid_n < 2) throw std::invalid_argument("max_valid_window needs N >= 2");
    if (task_count < 1) throw std::invalid_argument("max_valid_window needs L >= 1");
    int limit = std::min(grid_n, cap > 0 ? cap : grid_n);
    const std::vector<long long> indices =
        first_indices(scheme, static_cast<std::size_t>(task_count) + static_cast<std::size_t>(limit));
    for (int m = limit; m >= 2; --m) {
        bool admissible = true;
        for (int l = 0; l < task_count && admissible; ++l) {
            const long long span = indices[static_cast<std::size_t>(l + m - 1)] -
                                   indices[static_cast<std::size_t>(l)];
            if (span > grid_n - 1) {
                admissible = false;
                break;
            }
            std::vector<int> offsets(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                offsets[static_cast<std::size_t>(i)] =
                    static_cast<int>(indices[static_cast<std::size_t>(l + i)] -
                                     indices[static_cast<std::size_t>(l)]);
            }
            if (!detail::offsets_distinct_mod(offsets, grid_n)) admissible = false;
        }
        if (admissible) return m;
    }
    throw std::runtime_error("no admissible window length M >= 2 for scheme " +
                             scheme.to_string() + " at N=" + std::to_string(grid_n));
}

/// Slices a chronological record into L overlapping windows of M samples,
/// window l starting at the record position start+l (start is 1-based, so the
/// default start=1 begins at the first acquired sample).  Offsets are taken
/// relative to each window's first index and must be pairwise distinct mod N.
inline TaskSet build_tasks(const SampleRecord& record, int window_len, int task_count,
                           int grid_n, long long start = 1) {
    record.validate();
    if (window_len < 1) throw std::invalid_argument("build_tasks needs M >= 1");
    if (task_count < 1) throw std::invalid_argument("build_tasks needs L >= 1");
    if (grid_n < 2) throw std::invalid_argument("build_tasks needs N >= 2");
    if (start < 1) throw std::invalid_argument("build_tasks start position is 1-based");
    const std::size_t needed = static_cast<std::size_t>(start - 1) +
                               static_cast<std::size_t>(task_count) +
                               static_cast<std::size_t>(window_len) - 1;
    if (record.size() < needed) {
        throw std::invalid_argument("build_tasks: record holds " + std::to_string(record.size()) +
                                    " samples, needs " + std::to_string(needed));
    }

    TaskSet tasks;
    tasks.grid_n = grid_n;
    tasks.window_len = window_len;
    tasks.windows.reserve(static_cast<std::size_t>(task_count));
    for (int l = 0; l < task_count; ++l) {
        const std::size_t base = static_cast<std::size_t>(start - 1) + static_cast<std::size_t>(l);
        Window window;
        window.start_index = record.indices[base];
        window.offsets.resize(static_cast<std::size_t>(window_len));
        window.values.resize(static_cast<std::size_t>(window_len));
        for (int m = 0; m < window_len; ++m) {
            const long long diff = record.indices[base + static_cast<std::size_t>(m)] -
                                   record.indices[base];
            if (diff > std::numeric_limits<int>::max()) {
                throw std::invalid_argument("build_tasks: window span overflows offset range");
            }
            window.offsets[static_cast<std::size_t>(m)] = static_cast<int>(diff);
            window.values[static_cast<std::size_t>(m)] =
                record.values[base + static_cast<std::size_t>(m)];
        }
        if (!detail::offsets_distinct_mod(window.offsets, grid_n)) {
            throw std::invalid_argument("build_tasks: window " + std::to_string(l + 1) +
                                        " has duplicate rows (offsets collide mod N); "
                                        "reduce M via max_valid_window");
        }
        tasks.windows.push_back(std::move(window));
    }
    return tasks;
}

} // namespace lse
