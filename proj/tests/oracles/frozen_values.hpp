#pragma once

// Generated by tests/oracles/reference.py; do not edit by hand.

namespace frozen {

inline constexpr double kLuExample[] = {0.078125, 0.53125};
inline constexpr double kStepIdentity12[] = {0.921875, 1.46875};
inline constexpr double kStepCube12[] = {0.9148264275057428, 1.1756673438603789};
inline constexpr int kQuarticCube22Iterations = 6;
inline constexpr double kQuarticCube22Final[] = {1.0, 1.0};
inline constexpr int kQuarticIdentity1507Iterations = 4;
inline constexpr int kQuarticIdentityNearOneIterations = 4;
inline constexpr bool kJennrichExp55Singular = true;
inline constexpr int kJennrichExpTraceIterations = 5;
inline constexpr double kJennrichExpTrace[] = {1.0, -0.3, 0.8755881059620191, -0.5113032407381595, 0.861486996800034, -0.45677522377410684, 0.8612116061444116, -0.4557467811530876, 0.861211502516505, -0.45574639440838055, 0.8612115025164906, -0.4557463944083264};
inline constexpr double kLambdaQuarticIdentity1507 = 1.1136519121965027;
inline constexpr double kLambdaQuarticCube1507 = 0.46489878070375;
inline constexpr double kBoundsQuarticIdentityLo = 0.0;
inline constexpr double kBoundsQuarticIdentityHi = 1.7161847938627477;
inline constexpr double kBoundsQuarticCubeHi = 0.814154201766972;
inline constexpr double kClassicalG1Hessian11[] = {2.25, 0.75, 0.75, -0.75};
inline constexpr double kClassicalG1Hessian12[] = {0.5925925925925923, 0.3950617283950608, 0.3950617283950608, -5.5308641975308666};
inline constexpr unsigned char kRamp[12][3] = {{0, 0, 128}, {21, 21, 117}, {43, 43, 107}, {64, 64, 96}, {85, 85, 85}, {106, 106, 74}, {128, 128, 64}, {149, 149, 53}, {170, 170, 42}, {191, 191, 31}, {213, 213, 21}, {234, 234, 10}};

}  // namespace frozen

