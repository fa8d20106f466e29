#pragma once

#include <array>
#include <optional>
#include <string>

#include "hypercpf/errors.hpp"

namespace hypercpf {

// Binary labels of the photonic degrees of freedom and the electron spins.
// The integer value of each label is its bit in the packed basis index.
enum class Pol : int { R = 0, L = 1 };
enum class Freq : int { w1 = 0, w2 = 1 };
enum class Spatial : int { m1 = 0, m2 = 1 };
enum class TimeBin : int { l = 0, s = 1 };
// Interferometer arm inside a block; down is the physical input/output arm.
enum class Port : int { down = 0, up = 1 };
// Electron spin in the superposition basis |+> = (|up>+|down>)/sqrt(2).
enum class Spin : int { plus = 0, minus = 1 };

enum class Photon : int { a = 0, b = 1 };

constexpr int kNumSpins = 3;
constexpr int kModeDim = 16;         // pol x freq x spatial x timebin
constexpr int kModeDimWithPort = 32; // ... x port
constexpr int kSpinDim = 8;          // three spins

// One photon's full mode label. The port is only populated while a photon
// is inside a block's interferometer; outside it the field is absent.
struct PhotonMode {
    Pol pol = Pol::R;
    Freq freq = Freq::w1;
    Spatial spatial = Spatial::m1;
    TimeBin timebin = TimeBin::l;
    std::optional<Port> port;

    // Little-endian packing: pol is bit 0, then freq, spatial, timebin and,
    // when present, port as bit 4.
    int index() const;
    static PhotonMode from_index(int index, bool with_port);

    bool operator==(const PhotonMode&) const = default;

    std::string to_string() const;
};

struct SpinTriplet {
    Spin s1 = Spin::plus;
    Spin s2 = Spin::plus;
    Spin s3 = Spin::plus;

    // Little-endian: s1 is bit 0.
    int index() const {
        return static_cast<int>(s1) | (static_cast<int>(s2) << 1) | (static_cast<int>(s3) << 2);
    }
    static SpinTriplet from_index(int index);
    Spin spin(int nv) const; // nv in {1, 2, 3}

    bool operator==(const SpinTriplet&) const = default;

    std::string to_string() const; // e.g. "+-+", s1 first
    static SpinTriplet parse(const std::string& text);
};

inline Pol flip(Pol p) { return p == Pol::R ? Pol::L : Pol::R; }
inline Freq flip(Freq f) { return f == Freq::w1 ? Freq::w2 : Freq::w1; }
inline Spatial flip(Spatial s) { return s == Spatial::m1 ? Spatial::m2 : Spatial::m1; }
inline TimeBin flip(TimeBin t) { return t == TimeBin::l ? TimeBin::s : TimeBin::l; }
inline Port flip(Port p) { return p == Port::down ? Port::up : Port::down; }
inline Spin flip(Spin s) { return s == Spin::plus ? Spin::minus : Spin::plus; }

} // namespace hypercpf
