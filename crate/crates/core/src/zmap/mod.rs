//! Piecewise-linear maps and Z-retract certificates.
mod certify;
mod check;
mod pipeline;
mod plmap;
pub use certify::{certify_main, CollapseWitness, Condition, RetractVerdict, Status, Witnesses};
pub use check::{
    compose, fits_integer_affine, fixes_pointwise, image_inside, is_zmap, retarget_to_carrier_vertices,
    verify_section_retraction, verify_zretract,
};
pub use pipeline::{cube_corners_in, part2_reduce, pipeline_dh, Budgets, Part2, PipelineResult};
pub use plmap::PLMap;
