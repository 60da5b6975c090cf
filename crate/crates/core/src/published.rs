//! Published reference values for the blood-flow laterality example and
//! the size and power study grids, used for side-by-side reproduction.

use crate::hypothesis::Method;

/// Methods in the row order of the published tables.
pub const TABLE_METHODS: [Method; 3] = [Method::Mslr, Method::FisherZ, Method::Gv];

pub const SIZE_PAIRS: [(usize, usize); 5] = [(5, 5), (5, 10), (10, 10), (5, 15), (5, 25)];
pub const SIZE_RHOS: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Actual sizes at alpha = 0.05, indexed `[pair][method][rho]` following
/// [`SIZE_PAIRS`], [`TABLE_METHODS`] and [`SIZE_RHOS`].
pub const SIZES: [[[f64; 10]; 3]; 5] = [
    [
        [
            0.052, 0.053, 0.052, 0.051, 0.053, 0.051, 0.054, 0.049, 0.054, 0.053,
        ],
        [
            0.046, 0.043, 0.045, 0.043, 0.041, 0.047, 0.045, 0.040, 0.038, 0.041,
        ],
        [
            0.052, 0.051, 0.052, 0.051, 0.050, 0.051, 0.051, 0.053, 0.051, 0.051,
        ],
    ],
    [
        [
            0.050, 0.050, 0.051, 0.048, 0.049, 0.049, 0.050, 0.052, 0.049, 0.055,
        ],
        [
            0.049, 0.047, 0.045, 0.045, 0.043, 0.045, 0.046, 0.046, 0.045, 0.044,
        ],
        [
            0.049, 0.048, 0.050, 0.051, 0.051, 0.049, 0.049, 0.050, 0.051, 0.048,
        ],
    ],
    [
        [
            0.051, 0.055, 0.049, 0.050, 0.048, 0.049, 0.048, 0.051, 0.049, 0.051,
        ],
        [
            0.048, 0.050, 0.050, 0.048, 0.049, 0.049, 0.049, 0.052, 0.049, 0.045,
        ],
        [
            0.053, 0.054, 0.051, 0.051, 0.052, 0.051, 0.051, 0.051, 0.051, 0.053,
        ],
    ],
    [
        [
            0.056, 0.050, 0.051, 0.050, 0.050, 0.050, 0.048, 0.050, 0.050, 0.052,
        ],
        [
            0.045, 0.046, 0.051, 0.046, 0.047, 0.044, 0.042, 0.044, 0.046, 0.044,
        ],
        [
            0.047, 0.044, 0.047, 0.045, 0.044, 0.047, 0.048, 0.045, 0.047, 0.045,
        ],
    ],
    [
        [
            0.049, 0.053, 0.048, 0.048, 0.051, 0.048, 0.049, 0.050, 0.052, 0.049,
        ],
        [
            0.052, 0.047, 0.046, 0.050, 0.045, 0.045, 0.045, 0.045, 0.044, 0.046,
        ],
        [
            0.040, 0.036, 0.038, 0.033, 0.036, 0.037, 0.035, 0.036, 0.037, 0.039,
        ],
    ],
];

pub const POWER_PAIRS: [(usize, usize); 8] = [
    (5, 5),
    (5, 10),
    (10, 10),
    (15, 10),
    (5, 15),
    (5, 25),
    (20, 20),
    (25, 25),
];
/// First-group correlation in both power grids.
pub const POWER_RHO1: f64 = 0.05;
pub const POWER_RHO2_POSITIVE: [f64; 9] = [0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95];
pub const POWER_RHO2_NEGATIVE: [f64; 9] = [
    -0.15, -0.25, -0.35, -0.45, -0.55, -0.65, -0.75, -0.85, -0.95,
];

/// Empirical powers for positive second-group correlations, indexed
/// `[pair][method][rho2]`.
pub const POWERS_POSITIVE: [[[f64; 9]; 3]; 8] = [
    [
        [
            0.052, 0.059, 0.069, 0.076, 0.087, 0.102, 0.113, 0.131, 0.143,
        ],
        [
            0.049, 0.051, 0.056, 0.066, 0.071, 0.092, 0.098, 0.119, 0.129,
        ],
        [
            0.058, 0.061, 0.070, 0.080, 0.091, 0.121, 0.125, 0.134, 0.155,
        ],
    ],
    [
        [
            0.055, 0.064, 0.071, 0.085, 0.105, 0.131, 0.151, 0.175, 0.208,
        ],
        [
            0.046, 0.056, 0.064, 0.067, 0.082, 0.101, 0.124, 0.142, 0.168,
        ],
        [
            0.056, 0.057, 0.063, 0.074, 0.085, 0.108, 0.121, 0.139, 0.171,
        ],
    ],
    [
        [
            0.057, 0.067, 0.088, 0.097, 0.151, 0.201, 0.245, 0.290, 0.356,
        ],
        [
            0.051, 0.068, 0.091, 0.117, 0.153, 0.208, 0.240, 0.297, 0.349,
        ],
        [
            0.057, 0.066, 0.094, 0.122, 0.153, 0.204, 0.252, 0.294, 0.355,
        ],
    ],
    [
        [
            0.063, 0.082, 0.111, 0.164, 0.226, 0.290, 0.372, 0.448, 0.523,
        ],
        [
            0.048, 0.072, 0.094, 0.133, 0.181, 0.235, 0.291, 0.348, 0.414,
        ],
        [
            0.055, 0.070, 0.095, 0.135, 0.185, 0.236, 0.291, 0.363, 0.410,
        ],
    ],
    [
        [
            0.061, 0.063, 0.088, 0.099, 0.115, 0.136, 0.192, 0.214, 0.253,
        ],
        [
            0.046, 0.052, 0.067, 0.080, 0.100, 0.119, 0.139, 0.167, 0.193,
        ],
        [
            0.044, 0.048, 0.057, 0.070, 0.079, 0.099, 0.123, 0.152, 0.173,
        ],
    ],
    [
        [
            0.069, 0.076, 0.089, 0.108, 0.123, 0.171, 0.189, 0.235, 0.264,
        ],
        [
            0.052, 0.059, 0.067, 0.084, 0.102, 0.122, 0.140, 0.162, 0.196,
        ],
        [
            0.043, 0.042, 0.054, 0.064, 0.073, 0.091, 0.114, 0.133, 0.158,
        ],
    ],
    [
        [
            0.073, 0.111, 0.172, 0.251, 0.377, 0.456, 0.528, 0.652, 0.709,
        ],
        [
            0.074, 0.105, 0.178, 0.252, 0.351, 0.448, 0.540, 0.638, 0.717,
        ],
        [
            0.077, 0.112, 0.177, 0.255, 0.355, 0.435, 0.546, 0.643, 0.710,
        ],
    ],
    [
        [
            0.078, 0.123, 0.201, 0.324, 0.442, 0.549, 0.638, 0.776, 0.823,
        ],
        [
            0.080, 0.135, 0.214, 0.313, 0.422, 0.541, 0.650, 0.741, 0.814,
        ],
        [
            0.079, 0.133, 0.212, 0.317, 0.425, 0.538, 0.651, 0.739, 0.813,
        ],
    ],
];

/// Empirical powers for negative second-group correlations, indexed
/// `[pair][method][rho2]`.
pub const POWERS_NEGATIVE: [[[f64; 9]; 3]; 8] = [
    [
        [
            0.054, 0.066, 0.074, 0.085, 0.106, 0.121, 0.144, 0.161, 0.179,
        ],
        [
            0.049, 0.058, 0.060, 0.075, 0.090, 0.105, 0.120, 0.142, 0.158,
        ],
        [
            0.063, 0.071, 0.080, 0.090, 0.109, 0.119, 0.143, 0.166, 0.192,
        ],
    ],
    [
        [
            0.058, 0.072, 0.089, 0.114, 0.133, 0.166, 0.194, 0.216, 0.253,
        ],
        [
            0.051, 0.068, 0.074, 0.092, 0.108, 0.130, 0.154, 0.174, 0.202,
        ],
        [
            0.056, 0.061, 0.074, 0.092, 0.107, 0.126, 0.150, 0.181, 0.199,
        ],
    ],
    [
        [
            0.066, 0.084, 0.116, 0.164, 0.205, 0.252, 0.308, 0.368, 0.430,
        ],
        [
            0.068, 0.090, 0.117, 0.162, 0.206, 0.248, 0.304, 0.364, 0.425,
        ],
        [
            0.071, 0.089, 0.120, 0.164, 0.208, 0.257, 0.312, 0.368, 0.424,
        ],
    ],
    [
        [
            0.072, 0.113, 0.121, 0.192, 0.247, 0.278, 0.385, 0.445, 0.505,
        ],
        [
            0.069, 0.099, 0.121, 0.188, 0.247, 0.304, 0.372, 0.440, 0.511,
        ],
        [
            0.071, 0.100, 0.141, 0.186, 0.252, 0.299, 0.368, 0.442, 0.512,
        ],
    ],
    [
        [
            0.058, 0.064, 0.080, 0.101, 0.116, 0.136, 0.179, 0.188, 0.254,
        ],
        [
            0.053, 0.058, 0.068, 0.078, 0.101, 0.122, 0.143, 0.166, 0.193,
        ],
        [
            0.048, 0.055, 0.061, 0.077, 0.086, 0.100, 0.127, 0.147, 0.176,
        ],
    ],
    [
        [
            0.061, 0.071, 0.083, 0.092, 0.118, 0.158, 0.196, 0.240, 0.268,
        ],
        [
            0.053, 0.057, 0.068, 0.078, 0.101, 0.122, 0.143, 0.166, 0.193,
        ],
        [
            0.038, 0.044, 0.055, 0.065, 0.081, 0.098, 0.113, 0.135, 0.164,
        ],
    ],
    [
        [
            0.063, 0.103, 0.183, 0.246, 0.366, 0.417, 0.565, 0.660, 0.709,
        ],
        [
            0.075, 0.119, 0.179, 0.249, 0.349, 0.439, 0.546, 0.630, 0.716,
        ],
        [
            0.071, 0.114, 0.176, 0.257, 0.346, 0.448, 0.552, 0.638, 0.717,
        ],
    ],
    [
        [
            0.064, 0.145, 0.207, 0.319, 0.418, 0.569, 0.620, 0.734, 0.819,
        ],
        [
            0.077, 0.137, 0.211, 0.319, 0.426, 0.541, 0.651, 0.750, 0.813,
        ],
        [
            0.079, 0.133, 0.212, 0.314, 0.432, 0.542, 0.651, 0.735, 0.821,
        ],
    ],
];

/// Group size of both groups in the laterality example.
pub const LATERALITY_N: usize = 14;

/// One brain region of the laterality example: correlation between verbal
/// memory score and blood-flow laterality for men and for women.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub name: &'static str,
    pub r_male: f64,
    pub r_female: f64,
    /// Published p-values in [`TABLE_METHODS`] order.
    pub p_values: [f64; 3],
}

pub const LATERALITY_REGIONS: [Region; 3] = [
    Region {
        name: "temporal",
        r_male: -0.340,
        r_female: 0.812,
        p_values: [0.0008, 0.0004, 0.0008],
    },
    Region {
        name: "subcortical",
        r_male: 0.641,
        r_female: 0.491,
        p_values: [0.5978, 0.6018, 0.5948],
    },
    Region {
        name: "frontal",
        r_male: -0.032,
        r_female: -0.212,
        p_values: [0.6677, 0.6673, 0.6682],
    },
];

fn method_row(method: Method) -> Option<usize> {
    TABLE_METHODS.iter().position(|&m| m == method)
}

fn position(grid: &[f64], value: f64) -> Option<usize> {
    grid.iter().position(|&v| (v - value).abs() < 1e-9)
}

/// Published actual size for a cell, if it is part of the size grid.
pub fn published_size(n1: usize, n2: usize, rho: f64, method: Method) -> Option<f64> {
    let p = SIZE_PAIRS.iter().position(|&x| x == (n1, n2))?;
    Some(SIZES[p][method_row(method)?][position(&SIZE_RHOS, rho)?])
}

/// Published empirical power for a cell, if it is part of either power grid.
pub fn published_power(n1: usize, n2: usize, rho1: f64, rho2: f64, method: Method) -> Option<f64> {
    if (rho1 - POWER_RHO1).abs() > 1e-9 {
        return None;
    }
    let p = POWER_PAIRS.iter().position(|&x| x == (n1, n2))?;
    let m = method_row(method)?;
    if let Some(k) = position(&POWER_RHO2_POSITIVE, rho2) {
        return Some(POWERS_POSITIVE[p][m][k]);
    }
    position(&POWER_RHO2_NEGATIVE, rho2).map(|k| POWERS_NEGATIVE[p][m][k])
}
