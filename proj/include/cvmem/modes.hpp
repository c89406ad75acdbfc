#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cvmem/errors.hpp"

namespace cvmem {

/// Physical role of a mode. Light carries the input cluster, Atom is a
/// collective atomic spin mode, Readout is a read-out light pulse.
enum class ModeKind { Light, Atom, Readout };

inline char kind_letter(ModeKind kind) {
    switch (kind) {
    case ModeKind::Light:
        return 'L';
    case ModeKind::Atom:
        return 'A';
    default:
        return 'R';
    }
}

/// Identifies one bosonic mode by role and 1-based channel number.
struct ModeLabel {
    ModeKind kind;
    int channel;

    friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

inline ModeLabel light(int channel) { return {ModeKind::Light, channel}; }
inline ModeLabel atom(int channel) { return {ModeKind::Atom, channel}; }
inline ModeLabel readout(int channel) { return {ModeKind::Readout, channel}; }

inline std::string to_string(const ModeLabel& label) {
    return kind_letter(label.kind) + std::to_string(label.channel);
}

/// Fixed, total ordering of the quadratures of a set of labeled modes.
///
/// The quadrature vector interleaves pairs: (x_1, p_1, x_2, p_2, ...), so
/// mode k (0-based position) owns indices 2k (x) and 2k+1 (p). Every matrix
/// and coefficient vector in this library is indexed against an ordering.
class QuadratureOrdering {
  public:
    explicit QuadratureOrdering(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
        if (modes_.empty()) {
            throw ConfigError("quadrature ordering must contain at least one mode");
        }
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (modes_[k].channel < 1) {
                throw ConfigError("mode channel indices are 1-based; got " +
                                  std::to_string(modes_[k].channel));
            }
            auto [it, inserted] = positions_.emplace(modes_[k], static_cast<int>(k));
            if (!inserted) {
                throw ConfigError("duplicate mode label " + to_string(modes_[k]) +
                                  " in quadrature ordering");
            }
        }
    }

    /// Ordering over Light modes 1..n.
    static QuadratureOrdering lights(int n) {
        std::vector<ModeLabel> modes;
        modes.reserve(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            modes.push_back(light(i));
        }
        return QuadratureOrdering(std::move(modes));
    }

    int n_modes() const { return static_cast<int>(modes_.size()); }
    int dim() const { return 2 * n_modes(); }
    const std::vector<ModeLabel>& modes() const { return modes_; }

    bool contains(const ModeLabel& label) const { return positions_.count(label) != 0; }

    /// 0-based position of a mode within the ordering.
    int mode_position(const ModeLabel& label) const {
        auto it = positions_.find(label);
        if (it == positions_.end()) {
            throw LookupError("mode label " + to_string(label) + " not present in ordering");
        }
        return it->second;
    }

    int x_index(const ModeLabel& label) const { return 2 * mode_position(label); }
    int p_index(const ModeLabel& label) const { return 2 * mode_position(label) + 1; }

    friend bool operator==(const QuadratureOrdering& a, const QuadratureOrdering& b) {
        return a.modes_ == b.modes_;
    }

  private:
    std::vector<ModeLabel> modes_;
    std::map<ModeLabel, int> positions_;
};

} // namespace cvmem
