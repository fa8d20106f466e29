#include "hypercpf/basis.hpp"

namespace hypercpf {

int PhotonMode::index() const {
    int idx = static_cast<int>(pol) | (static_cast<int>(freq) << 1) |
              (static_cast<int>(spatial) << 2) | (static_cast<int>(timebin) << 3);
    if (port) idx |= static_cast<int>(*port) << 4;
    return idx;
}

PhotonMode PhotonMode::from_index(int index, bool with_port) {
    const int limit = with_port ? kModeDimWithPort : kModeDim;
    if (index < 0 || index >= limit)
        throw DimensionError("photon mode index " + std::to_string(index) + " out of range 0.." +
                             std::to_string(limit - 1));
    PhotonMode m;
    m.pol = static_cast<Pol>(index & 1);
    m.freq = static_cast<Freq>((index >> 1) & 1);
    m.spatial = static_cast<Spatial>((index >> 2) & 1);
    m.timebin = static_cast<TimeBin>((index >> 3) & 1);
    if (with_port) m.port = static_cast<Port>((index >> 4) & 1);
    return m;
}

std::string PhotonMode::to_string() const {
    std::string out;
    out += (pol == Pol::R) ? 'R' : 'L';
    out += (freq == Freq::w1) ? "w1" : "w2";
    out += (spatial == Spatial::m1) ? "m1" : "m2";
    out += (timebin == TimeBin::l) ? 'l' : 's';
    if (port) out += (*port == Port::down) ? "v" : "^";
    return out;
}

SpinTriplet SpinTriplet::from_index(int index) {
    if (index < 0 || index >= kSpinDim)
        throw DimensionError("spin index " + std::to_string(index) + " out of range 0..7");
    return {static_cast<Spin>(index & 1), static_cast<Spin>((index >> 1) & 1),
            static_cast<Spin>((index >> 2) & 1)};
}

Spin SpinTriplet::spin(int nv) const {
    switch (nv) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw DimensionError("NV index must be 1, 2 or 3, got " + std::to_string(nv));
    }
}

std::string SpinTriplet::to_string() const {
    std::string out;
    for (Spin s : {s1, s2, s3}) out += (s == Spin::plus) ? '+' : '-';
    return out;
}

SpinTriplet SpinTriplet::parse(const std::string& text) {
    if (text.size() != 3)
        throw ValidationError("spin outcome string must have exactly 3 characters of +/-, got \"" +
                              text + "\"");
    Spin s[3];
    for (int i = 0; i < 3; ++i) {
        if (text[static_cast<size_t>(i)] == '+') s[i] = Spin::plus;
        else if (text[static_cast<size_t>(i)] == '-') s[i] = Spin::minus;
        else
            throw ValidationError("spin outcome string may only contain + or -, got \"" + text +
                                  "\"");
    }
    return {s[0], s[1], s[2]};
}

} // namespace hypercpf
