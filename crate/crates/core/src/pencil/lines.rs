use crate::error::{Error, Result};
use crate::mpoly::ProjPoint;

use super::cubic::Kodaira;
use super::fibers::{singular_fiber_table, FiberRecord};
use super::smooth::verdict_from_table;
use super::{LineP3, QuarticWithLine};

/// Lines of `X` meeting `ℓ`, grouped by the plane through `ℓ` containing them.
#[derive(Clone, Debug)]
pub struct LinesMeeting {
    pub count: usize,
    pub groups: Vec<(ProjPoint, Kodaira, Vec<LineP3>)>,
}

pub(crate) fn lines_from_table(table: &[FiberRecord]) -> LinesMeeting {
    let groups: Vec<_> = table
        .iter()
        .filter(|r| !r.components.is_empty())
        .map(|r| (r.param.clone(), r.kodaira, r.components.clone()))
        .collect();
    LinesMeeting {
        count: groups.iter().map(|g| g.2.len()).sum(),
        groups,
    }
}

/// Any line of `X` meeting `ℓ` lies in a plane through `ℓ`, so it is a
/// component of a singular fiber.
pub fn lines_meeting_line(x: &QuarticWithLine) -> Result<LinesMeeting> {
    if !x.smooth_along_line() {
        return Err(Error::SingularSurface);
    }
    let table = singular_fiber_table(x)?;
    if !verdict_from_table(x, &table).smooth {
        return Err(Error::SingularSurface);
    }
    Ok(lines_from_table(&table))
}
