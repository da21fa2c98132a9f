// Generated by tests/oracle/oracle.py (mpmath, 50 digits). Do not edit.
#pragma once

namespace oracle {

// triangle (0,0), (1,0), (0,1)
inline constexpr double kRightRatios[] = {1.581138830084189665999447, 0.6324555320336758663997787, 1.0};
inline constexpr double kRightStep[] = {-0.047465413803970118310939, -0.1699802364594114961776794, 0.9012178842465436812887291, 0.1462475295574264370222099, 0.1462475295574264370222099, 1.023732706901985059155469};
inline constexpr int kRightIterationsTol1e10 = 32;
// deviation after the last step: 8.2285e-11
inline constexpr double kRightConverged[] = {-0.1071529053969803291423067, -0.1390599620123102847173284, 0.9626810469890490057732322, 0.1880577082410198887959588, 0.1444718584079313233690745, 0.9510022537712903959213696};

// triangle (0,0), (1,0), (0.05,0.3): smallest vertex-centroid distance before and after one step
inline constexpr double kThinMinRadius[] = {0.3605551275463989293119221, 0.238883017379467168254267};

// convex pentagon (0,0), (3,0), (4,2), (1.5,3.5), (-1,2), one step
inline constexpr double kPentagonStep[] = {-1.76601338707814949491312, -1.813773945033932181322927, 1.536762250653845151646491, -1.510998307301937534763317, 2.116887986498454359215272, 0.4050268398669843067504398, 0.03676225065384515164649076, 2.538511449494454880250796, -1.924399100727995167595134, 0.3812339629744305290850084};

// kite (2,0), (0,1), (-2,0), (0,-1): two steps
inline constexpr double kKiteStep1[] = {1.0, 0.0, 0.0, 2.0, -1.0, 0.0, 0.0, -2.0};
inline constexpr double kKiteStep2[] = {2.0, 0.0, 0.0, 1.0, -2.0, 0.0, 0.0, -1.0};

// gen_simple_mesh(7) with vertex 0 moved to (0.1, 0.05), one free-boundary step
inline constexpr double kSimple6Displaced[] = {0.1, 0.05, -0.5, 0.8660254037844386467637232, -1.0, -1.01069573753568331117037e-51, -0.5, -0.8660254037844386467637232, 0.5, -0.8660254037844386467637232, 1.0, 2.02139147507136662234074e-51, 0.5, 0.8660254037844386467637232};
inline constexpr double kSimple6Step[] = {0.08224224080404688900011766, 0.02310688123518454198554826, -0.4925572858908662801956442, 0.8799286394150601005344712, -0.9905414242472653357363352, 0.01165877124699942255160334, -0.4907938441109579191596026, -0.851998952539243036852116, 0.5100274118377266613928401, -0.8533400165881162153612593, 1.008431786477282228065708, 0.01562284879082060187107996, 0.5087066335219399786326811, 0.878808065968925501299576};

// regular unit tet, vertex 3 moved 0.1 along the edge towards vertex 0, one free step
inline constexpr double kTetDisplaced[] = {0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.5, 0.8660254037844386467637232, 0.0, 0.45, 0.259807621135331594029117, 0.7348469228349534294591852};
inline constexpr double kTetStep[] = {0.006275633232733159793313302, -0.000008229407579618394906949963, -0.01321234446849589291489868, 0.9892052892575454591820387, 0.002965406143299201301912994, -0.004761199640399129116536929, 0.4999951922027457019628856, 0.8567553956466501332614724, -0.00005064023028588717347508377, 0.4545238853069756790617624, 0.2661204525374005246243617, 0.7528711071741343386640959};
inline constexpr double kTetDisplacedMeanRatio = 0.9934313518147328526429471;

inline constexpr double kCornerTetMeanRatio = 0.8399473665965821098448071;

// free-boundary Jacobian at gen_simple_mesh(7), eigenvalue moduli
inline constexpr double kSimple6Moduli[] = {1.0, 1.0, 1.0, 1.0, 0.8779711460710615707001171, 0.8779711460710615707001171, 0.6614378277661476476254039, 0.6614378277661476476254039, 0.6614378277661476476254039, 0.6614378277661476476254039, 0.6614378277661476476254039, 0.6614378277661476476254039, 0.5773502691896257645091488, 0.5773502691896257645091488};
inline constexpr double kSimple6MaxTransverse = 0.8779711460710615707001171;
inline constexpr double kSimple6MinTransverse = 0.5773502691896257645091488;

// largest non-unit modulus of the normalised operator at gen_simple_mesh(N), N = 4..13
inline constexpr double kNormalizedSimpleMaxTransverse[] = {1.318178723552729089271311, 0.7335601921133181699667324, 0.7906693201393774156931897, 0.8779711460710615707001171, 0.9371053995846617083570928, 0.9736805462554559591921203, 0.9954374544386839573155962, 1.008015816485094864251035, 1.014977217614315131671887, 1.018507159499582786047084};

}  // namespace oracle
