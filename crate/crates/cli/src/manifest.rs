//! Run manifest: config echo plus a checksummed inventory of every output.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const MANIFEST_FILE: &str = "manifest.txt";
/// Wall-clock per stage. Kept out of the manifest so reruns compare equal.
pub const TIMINGS_FILE: &str = "timings.txt";

const CONFIG_MARK: &str = "--- config ---";
const FILES_MARK: &str = "--- files ---";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileEntry {
    pub size: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub version: String,
    pub command: String,
    /// `ok` or `failed: <reason>`.
    pub status: String,
    pub stages: Vec<String>,
    pub config: String,
    pub files: BTreeMap<String, FileEntry>,
}

impl Manifest {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "qscope manifest\nversion = {}\ncommand = {}\nstatus = {}\nstages = {}\n{CONFIG_MARK}\n{}",
            self.version,
            self.command,
            self.status.replace('\n', " "),
            self.stages.join(", "),
            self.config
        );
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s.push_str(FILES_MARK);
        s.push('\n');
        for (name, e) in &self.files {
            s.push_str(&format!("{name} {} {}\n", e.size, e.sha256));
        }
        s
    }

    pub fn parse(text: &str) -> Option<Self> {
        let (head, rest) = text.split_once(&format!("{CONFIG_MARK}\n"))?;
        let (config, files) = rest.split_once(&format!("{FILES_MARK}\n"))?;
        let mut fields = BTreeMap::new();
        for line in head.lines().skip(1) {
            let (k, v) = line.split_once(" = ")?;
            fields.insert(k, v);
        }
        let mut inventory = BTreeMap::new();
        for line in files.lines() {
            let mut it = line.rsplitn(3, ' ');
            let sha256 = it.next()?.to_string();
            let size = it.next()?.parse().ok()?;
            inventory.insert(it.next()?.to_string(), FileEntry { size, sha256 });
        }
        Some(Self {
            version: fields.get("version")?.to_string(),
            command: fields.get("command")?.to_string(),
            status: fields.get("status")?.to_string(),
            stages: fields
                .get("stages")?
                .split(", ")
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
            config: config.to_string(),
            files: inventory,
        })
    }
}

/// The one place outputs are written. Every file is hashed as it lands.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: BTreeMap<String, FileEntry>,
}

fn entry(bytes: &[u8]) -> FileEntry {
    FileEntry {
        size: bytes.len() as u64,
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

impl OutputDir {
    pub fn create(root: impl AsRef<Path>) -> io::Result<Self> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root)?;
        Ok(Self {
            root,
            files: BTreeMap::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> io::Result<()> {
        fs::write(self.root.join(name), bytes)?;
        self.files.insert(name.to_string(), entry(bytes));
        Ok(())
    }

    /// Registers a file some other routine already wrote into the directory.
    pub fn record(&mut self, name: &str) -> io::Result<()> {
        let bytes = fs::read(self.root.join(name))?;
        self.files.insert(name.to_string(), entry(&bytes));
        Ok(())
    }

    pub fn files(&self) -> &BTreeMap<String, FileEntry> {
        &self.files
    }

    /// Writes through a temporary name and renames, so a reader never sees
    /// a partial manifest.
    pub fn write_manifest(&self, m: &Manifest) -> io::Result<()> {
        let tmp = self.root.join(format!("{MANIFEST_FILE}.tmp"));
        fs::write(&tmp, m.to_text())?;
        fs::rename(tmp, self.root.join(MANIFEST_FILE))
    }

    pub fn write_timings(&self, timings: &[(String, f64)]) -> io::Result<()> {
        let text: String = timings
            .iter()
            .map(|(s, t)| format!("{s} {t:.3}\n"))
            .collect();
        fs::write(self.root.join(TIMINGS_FILE), text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_round_trip() {
        let mut files = BTreeMap::new();
        files.insert("a b.csv".to_string(), entry(b"x"));
        files.insert("u.txt".to_string(), entry(b""));
        let m = Manifest {
            version: "0.1.0".into(),
            command: "all".into(),
            status: "ok".into(),
            stages: vec!["forward".into(), "probe".into()],
            config: "[grid]\nn = 9\n".into(),
            files,
        };
        assert_eq!(Manifest::parse(&m.to_text()).unwrap(), m);
        assert_eq!(
            m.files["u.txt"].sha256,
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn writer_tracks_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path().join("nested")).unwrap();
        out.write("b.txt", b"2").unwrap();
        fs::write(out.root().join("a.txt"), b"1").unwrap();
        out.record("a.txt").unwrap();
        let names: Vec<_> = out.files().keys().cloned().collect();
        assert_eq!(names, ["a.txt", "b.txt"]);
        let m = Manifest {
            version: "v".into(),
            command: "c".into(),
            status: "ok".into(),
            stages: vec![],
            config: String::new(),
            files: out.files().clone(),
        };
        out.write_manifest(&m).unwrap();
        assert!(!out.root().join("manifest.txt.tmp").exists());
        let back =
            Manifest::parse(&fs::read_to_string(out.root().join(MANIFEST_FILE)).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
