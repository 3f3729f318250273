#pragma once

// Values measured once by tools/calibrate at the default configuration and frozen.
namespace critgabor::golden {

// min |Theta| over the closed unit square with a 0.05-disk around 1/2 + i/2 removed
inline constexpr double kThetaMinOffZero = 0.32032863219804636;
// smallest singular value of synthesis on the 5x5 block plus the sharp point; bounds
// ||b e_sharp + sum c e_lambda|| / ||(b, c)|| from below
inline constexpr double kUniquenessMinRatio = 0.15104272593602364;
// sup over span(h_0..h_7) of zak_sobolev_norm(Zf, 2) / ||f||_2
inline constexpr double kZakSobolevConstant = 2.2230543951199482;
// max over disks of radius 2..6 (r = 3) of |excess| / (r sqrt(area))
inline constexpr double kDofExcessConstant = 2.9782107221522853;
// ||g+|| <= kGPlusConstant * sqrt(g_plus_bound) over the certainty test family,
// with exp(-pi (r/2 - l)^2) ||f||_delta^2 the reported g_plus_bound
inline constexpr double kGPlusConstant = 0.34241324612352109;

}  // namespace critgabor::golden
