//! Series, jumps and widths, and the structural predicates built on them.

mod involution;
mod power;
mod predicates;
mod series;

pub use involution::{plus_minus_decomposition, PlusMinus};
pub use power::{
    center_is_last_term, cubing_identity, cyclic_jumps_same_parity, is_regular, obelisk_power_law, pair_list,
    power_abelian_report, power_congruence, PairPolicy, PowerAbelianReport, PowerLevel, RegularityReport,
};
pub use predicates::{
    consecutive_width_bound, frattini_of, is_extraspecial, is_framed, is_kappa_group, is_obelisk, line_checks,
    line_representatives, lines_criterion, normal_closure_within, normal_iff_squeezed, LineCheck,
};
pub use series::{
    commutator_subgroup_all_pairs, lower_central_series, minimal_generators, Jump, JumpProfile, SeriesData,
};
