use super::{blocks_to_configuration, PathBuilder};
use crate::error::{Result, TbnError};
use crate::kinetics::Path;
use crate::model::{Configuration, Monomer, SiteType, Tbn};

/// Parameters of an `n x n` grid gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
    pub h_copies: u32,
    pub v_copies: u32,
    pub g_copies: u32,
    /// Number of catalyst monomers `C` (the lower triangle).
    pub catalysts: u32,
    /// Use the modified vertical monomers and the two-copy network
    /// `{2 G} + {H_i} + {2 V~_j}`; the copy counts above are then ignored.
    pub autocatalytic: bool,
}

impl GridSpec {
    pub fn single(n: usize) -> Self {
        Self {
            n,
            h_copies: 1,
            v_copies: 1,
            g_copies: 1,
            catalysts: 0,
            autocatalytic: false,
        }
    }

    pub fn with_catalysts(mut self, m: u32) -> Self {
        self.catalysts = m;
        self
    }

    pub fn autocatalytic(n: usize) -> Self {
        Self {
            n,
            h_copies: 1,
            v_copies: 2,
            g_copies: 2,
            catalysts: 0,
            autocatalytic: true,
        }
    }
}

/// A generated grid gate with its named configurations.
#[derive(Clone, Debug)]
pub struct Grid {
    pub spec: GridSpec,
    pub tbn: Tbn,
    /// `base_H`, `base_V` (catalysts separate), and for the autocatalytic
    /// network `auto_H`, `auto_V`.
    pub configurations: Vec<(String, Configuration)>,
}

/// Site `x_ij` is named `ij` while `n <= 9`, else `i_j`.
pub(crate) fn grid_site(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("{i}{j}")
    } else {
        format!("{i}_{j}")
    }
}

pub fn gen_grid(spec: &GridSpec) -> Result<Grid> {
    let n = spec.n;
    if n == 0 {
        return Err(TbnError::Spec("grid size must be positive".into()));
    }
    let x = |i: usize, j: usize| SiteType::unstarred(grid_site(n, i, j));
    let g = Monomer::labeled(
        "G",
        (1..=n).flat_map(|i| (1..=n).map(move |j| SiteType::starred(grid_site(n, i, j)))),
    );
    let (gc, hc, vc) = if spec.autocatalytic {
        (2, 1, 2)
    } else {
        (spec.g_copies, spec.h_copies, spec.v_copies)
    };
    let mut entries = vec![(g, gc)];
    for i in 1..=n {
        entries.push((Monomer::labeled(format!("H{i}"), (1..=n).map(|j| x(i, j))), hc));
    }
    for j in 1..=n {
        let mut sites: Vec<SiteType> = (1..=n).map(|i| x(i, j)).collect();
        if spec.autocatalytic {
            sites.extend((j..=n).map(|i| x(i, j)));
        }
        entries.push((Monomer::labeled(format!("V{j}"), sites), vc));
    }
    if spec.catalysts > 0 {
        let sites = (1..=n).flat_map(|i| (1..=i).map(move |j| (i, j)));
        entries.push((Monomer::labeled("C", sites.map(|(i, j)| x(i, j))), spec.catalysts));
    }
    let entries: Vec<(Monomer, u32)> = entries.into_iter().filter(|(_, k)| *k > 0).collect();
    let tbn = Tbn::new(entries)?;

    // every starred site must be coverable
    for name in tbn.site_names() {
        let k = tbn.name_index(name).expect("known name");
        let whole = tbn.whole();
        let prof = tbn.profile(&whole.polymers()[0]);
        if prof.unstarred[k] < prof.starred[k] {
            return Err(TbnError::Spec(format!("not enough unstarred {name} to bind every G")));
        }
    }

    let mut grid = Grid {
        spec: spec.clone(),
        tbn,
        configurations: Vec::new(),
    };
    let (gc, hc, vc) = (grid.count("G"), grid.count("H1"), grid.count("V1"));
    if spec.autocatalytic {
        let auto_h = grid.blocks(&[Role::GH, Role::GV]);
        let auto_v = grid.blocks(&[Role::GV, Role::GV]);
        grid.configurations
            .push(("auto_H".into(), blocks_to_configuration(&grid.tbn, &auto_h)));
        grid.configurations
            .push(("auto_V".into(), blocks_to_configuration(&grid.tbn, &auto_v)));
    } else if gc <= hc && gc <= vc {
        let base_h = grid.blocks(&vec![Role::GH; gc as usize]);
        let base_v = grid.blocks(&vec![Role::GV; gc as usize]);
        grid.configurations
            .push(("base_H".into(), blocks_to_configuration(&grid.tbn, &base_h)));
        grid.configurations
            .push(("base_V".into(), blocks_to_configuration(&grid.tbn, &base_v)));
    }
    Ok(grid)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    GH,
    GV,
}

impl Grid {
    fn count(&self, label: &str) -> u32 {
        self.tbn.type_by_label(label).map_or(0, |t| self.tbn.counts()[t])
    }

    pub fn g(&self) -> usize {
        self.tbn.type_by_label("G").expect("G")
    }

    pub fn h(&self, i: usize) -> usize {
        self.tbn.type_by_label(&format!("H{i}")).expect("H_i")
    }

    pub fn v(&self, j: usize) -> usize {
        self.tbn.type_by_label(&format!("V{j}")).expect("V_j")
    }

    pub fn c(&self) -> Option<usize> {
        self.tbn.type_by_label("C")
    }

    pub fn gh(&self) -> Vec<usize> {
        std::iter::once(self.g())
            .chain((1..=self.spec.n).map(|i| self.h(i)))
            .collect()
    }

    pub fn gv(&self) -> Vec<usize> {
        std::iter::once(self.g())
            .chain((1..=self.spec.n).map(|j| self.v(j)))
            .collect()
    }

    pub fn configuration(&self, name: &str) -> Option<&Configuration> {
        self.configurations.iter().find(|(k, _)| k == name).map(|(_, c)| c)
    }

    /// One polymer per role, every other monomer separate.
    fn blocks(&self, roles: &[Role]) -> Vec<Vec<usize>> {
        let mut left: Vec<u32> = self.tbn.counts().to_vec();
        let mut blocks = Vec::new();
        for r in roles {
            let members = match r {
                Role::GH => self.gh(),
                Role::GV => self.gv(),
            };
            for &t in &members {
                left[t] -= 1;
            }
            blocks.push(members);
        }
        for (t, &k) in left.iter().enumerate() {
            for _ in 0..k {
                blocks.push(vec![t]);
            }
        }
        blocks
    }

    /// Whether `c` has a `G` polymer holding all `H_i` (or all `V_j`) and all
    /// other monomers separate, i.e. is a base configuration.
    pub fn is_base(&self, c: &Configuration) -> bool {
        let gc = self.count("G") as usize;
        // any mix of G_H and G_V polymers, one per G
        (0..=gc).any(|h| {
            if h as u32 > self.count("H1") || (gc - h) as u32 > self.count("V1") {
                return false;
            }
            let mut roles = vec![Role::GH; h];
            roles.extend(vec![Role::GV; gc - h]);
            blocks_to_configuration(&self.tbn, &self.blocks(&roles)) == *c
        })
    }
}

/// The catalyzed height-1 path from `base_H` to `base_V` (or `auto_H` to
/// `auto_V`, with `G_V~` as the catalyst): merge the catalyst into `G_H`,
/// split `H_n`, then for `k = n-1` down to `1` merge `V_{k+1}` and split
/// `H_k`, and finally merge `V_1` and split the catalyst back off.
///
/// Each split removes the row whose starred sites the catalyst or the newly
/// merged column already covers, which keeps every configuration saturated.
pub fn grid_catalyzed_path(grid: &Grid) -> Result<Path> {
    let n = grid.spec.n;
    let (start, catalyst) = if grid.spec.autocatalytic {
        (grid.blocks(&[Role::GH, Role::GV]), grid.gv())
    } else {
        let c = grid
            .c()
            .ok_or_else(|| TbnError::Domain("the catalyzed path needs a catalyst monomer".into()))?;
        if grid.count("G") != 1 {
            return Err(TbnError::Domain("the catalyzed path is defined for a single G".into()));
        }
        (grid.blocks(&[Role::GH]), vec![c])
    };
    let mut b = PathBuilder::new(&grid.tbn, start);
    let mut blob = grid.gh();
    b.merge(&blob, &catalyst)?;
    blob.extend(&catalyst);
    let remove = |blob: &mut Vec<usize>, t: usize| {
        let k = blob.iter().position(|&x| x == t).expect("member");
        blob.remove(k);
    };
    b.split(&blob, &[grid.h(n)])?;
    remove(&mut blob, grid.h(n));
    for k in (1..n).rev() {
        b.merge(&blob, &[grid.v(k + 1)])?;
        blob.push(grid.v(k + 1));
        b.split(&blob, &[grid.h(k)])?;
        remove(&mut blob, grid.h(k));
    }
    b.merge(&blob, &[grid.v(1)])?;
    blob.push(grid.v(1));
    b.split(&blob, &catalyst)?;
    b.finish()
}
