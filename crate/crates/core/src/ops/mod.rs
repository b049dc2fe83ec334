//! Algebraic operations on based complexes.

pub mod duality;
pub mod join;
pub mod suspension;
pub mod tensor;

pub use duality::{
    cube_selfduality, cube_selfduality_word, dual, dual_co, dual_coop, dual_map, dual_op, interval_duality,
    swap_iso_co, swap_iso_op, Duality,
};
pub use join::{
    antijoin, join, join_closed_form, join_map, join_op_iso, join_pushout, JoinPushout, Orientation,
};
pub use suspension::{antisuspension, susp_coop_iso, suspension, suspension_map, suspension_via_pushout};
pub use tensor::{gray_tensor, gray_tensor_map, gray_tensor_map_between, left_unitor, right_unitor};
