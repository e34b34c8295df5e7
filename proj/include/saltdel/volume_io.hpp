#pragma once

#include <string>

#include "saltdel/volume.hpp"

namespace saltdel {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw little-endian float32 samples plus a key/value text header sidecar:
//   dims=[m,n,k]
//   dtype=f32le
//   order=mnk
//   start_ms=...   (optional)
//   step_ms=...    (optional)
SeismicVolume load_volume(const std::string& path_data, const std::string& path_header);
void save_volume(const SeismicVolume& v, const std::string& path_data,
                 const std::string& path_header);

// Masks use the same header scheme with dtype=u8 and one byte per voxel.
BinaryVolume load_mask(const std::string& path_data, const std::string& path_header);
void save_mask(const BinaryVolume& v, const std::string& path_data,
               const std::string& path_header);

}  // namespace saltdel
