//! Text preprocessing: tokenization, letter normalization, stop-word
//! removal, and light stemming.
//!
//! The chain is `tokenize` → `normalize` → drop empties → `remove_stopwords`
//! → `light_stem` → optional first-occurrence deduplication. [`Preprocessor`]
//! bundles one configuration of the chain and exposes a
//! [`PreprocessFingerprint`] so trained models can refuse documents that were
//! preprocessed differently.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::corpus::LabeledDocument;

/// Errors from loading or validating preprocessing configuration.
#[derive(Debug, Error)]
pub enum TextError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid normalization profile: {0}")]
    InvalidProfile(String),
    #[error("invalid stemmer configuration: {0}")]
    InvalidStemmer(String),
    #[error("invalid stemmer configuration file {path}: {reason}")]
    StemmerFormat { path: String, reason: String },
}

/// Arabic consonant/vowel letters: hamza through ghain, feh through yeh.
/// Tatweel (U+0640) sits between the two ranges and is deliberately excluded.
pub fn is_arabic_letter(ch: char) -> bool {
    matches!(ch, '\u{0621}'..='\u{063A}' | '\u{0641}'..='\u{064A}')
}

/// Short-vowel diacritic marks, fathatan through sukun.
pub fn is_diacritic(ch: char) -> bool {
    matches!(ch, '\u{064B}'..='\u{0652}')
}

fn is_token_char(ch: char) -> bool {
    // Diacritics ride along inside tokens so that normalization can strip
    // them; everything else separates.
    is_arabic_letter(ch) || is_diacritic(ch)
}

/// Splits text into maximal runs of Arabic letters (plus attached
/// diacritics). Digits (Western and Arabic-Indic), Latin letters,
/// punctuation, whitespace, and tatweel all act as separators and are
/// discarded.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if is_token_char(ch) {
            current.push(ch);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// A letter-folding scheme: a per-code-point map, an extra map applied only
/// to a token's final code point, and a diacritic-stripping switch.
#[derive(Debug, Clone)]
pub struct NormalizationProfile {
    name: String,
    char_map: BTreeMap<char, char>,
    final_map: BTreeMap<char, char>,
    strip_diacritics: bool,
}

impl NormalizationProfile {
    /// Builds a custom profile. The maps must be idempotent: no mapped value
    /// may itself be a key of either map, otherwise repeated normalization
    /// would keep rewriting.
    pub fn new(
        name: impl Into<String>,
        char_map: BTreeMap<char, char>,
        final_map: BTreeMap<char, char>,
        strip_diacritics: bool,
    ) -> Result<Self, TextError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ':') {
            return Err(TextError::InvalidProfile(format!(
                "profile name {name:?} must be non-empty and free of whitespace and ':'"
            )));
        }
        for (&k, &v) in &char_map {
            if char_map.contains_key(&v) {
                return Err(TextError::InvalidProfile(format!(
                    "char map is not idempotent: {k} maps to {v}, which is itself mapped"
                )));
            }
        }
        for (&k, &v) in &final_map {
            if final_map.contains_key(&v) || char_map.contains_key(&v) {
                return Err(TextError::InvalidProfile(format!(
                    "final map is not idempotent: {k} maps to {v}, which is itself mapped"
                )));
            }
        }
        Ok(Self {
            name,
            char_map,
            final_map,
            strip_diacritics,
        })
    }

    /// The default profile: folds all alef variants to bare alef, hamza on
    /// waw to waw, taa marbuta to heh, hamza on yeh to yeh, and strips
    /// diacritics. Lam + alef-hamza sequences collapse to lam + alef as a
    /// consequence of the per-character alef folding.
    pub fn system() -> Self {
        let char_map = BTreeMap::from([
            ('\u{0622}', '\u{0627}'), // آ → ا
            ('\u{0623}', '\u{0627}'), // أ → ا
            ('\u{0625}', '\u{0627}'), // إ → ا
            ('\u{0624}', '\u{0648}'), // ؤ → و
            ('\u{0629}', '\u{0647}'), // ة → ه
            ('\u{0626}', '\u{064A}'), // ئ → ي
        ]);
        Self {
            name: "system".to_string(),
            char_map,
            final_map: BTreeMap::new(),
            strip_diacritics: true,
        }
    }

    /// Alternative profile: folds alef-madda and alef-hamza-above to bare
    /// alef at every position, rewrites a final yeh to alef maqsura, and
    /// strips diacritics.
    pub fn khreisat() -> Self {
        let char_map = BTreeMap::from([
            ('\u{0622}', '\u{0627}'), // آ → ا
            ('\u{0623}', '\u{0627}'), // أ → ا
        ]);
        let final_map = BTreeMap::from([
            ('\u{064A}', '\u{0649}'), // ي → ى
        ]);
        Self {
            name: "khreisat".to_string(),
            char_map,
            final_map,
            strip_diacritics: true,
        }
    }

    /// Looks a profile up by name.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "system" => Some(Self::system()),
            "khreisat" => Some(Self::khreisat()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn strip_diacritics(&self) -> bool {
        self.strip_diacritics
    }

    fn map_char(&self, ch: char) -> char {
        self.char_map.get(&ch).copied().unwrap_or(ch)
    }
}

/// Applies a profile to one token: strip diacritics, fold each code point
/// through the character map, then fold the final code point. The result is
/// empty when the token consisted solely of diacritics.
pub fn normalize(token: &str, profile: &NormalizationProfile) -> String {
    let mut out = String::with_capacity(token.len());
    for ch in token.chars() {
        if profile.strip_diacritics && is_diacritic(ch) {
            continue;
        }
        out.push(profile.map_char(ch));
    }
    if let Some(last) = out.chars().last() {
        if let Some(&mapped) = profile.final_map.get(&last) {
            out.pop();
            out.push(mapped);
        }
    }
    out
}

/// A set of tokens to drop from documents. Entries are normalized under the
/// profile given at load time, so the list matches tokens that already went
/// through [`normalize`] with the same profile.
#[derive(Debug, Clone, Default)]
pub struct StopList {
    words: BTreeSet<String>,
}

impl StopList {
    /// An empty list: `remove_stopwords` becomes the identity.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses stop-list text: one word per line, `#` lines are comments,
    /// blank lines ignored. Every entry is normalized under `profile`.
    pub fn parse(content: &str, profile: &NormalizationProfile) -> Self {
        let mut words = BTreeSet::new();
        for line in content.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let normalized = normalize(line, profile);
            if !normalized.is_empty() {
                words.insert(normalized);
            }
        }
        Self { words }
    }

    /// Loads a stop-list file (UTF-8, one word per line).
    pub fn load(path: impl AsRef<Path>, profile: &NormalizationProfile) -> Result<Self, TextError> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|source| TextError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::parse(&content, profile))
    }

    /// The bundled default list of common Arabic function words.
    pub fn default_arabic(profile: &NormalizationProfile) -> Self {
        Self::parse(include_str!("../data/stopwords_ar.txt"), profile)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    /// Stable content hash, used in preprocessing fingerprints.
    pub fn hash_hex(&self) -> String {
        let mut joined = String::new();
        for w in &self.words {
            joined.push_str(w);
            joined.push('\n');
        }
        format!("{:016x}", fnv1a_64(joined.as_bytes()))
    }
}

/// Keeps exactly the tokens not present in the stop list, preserving order.
pub fn remove_stopwords(tokens: Vec<String>, stops: &StopList) -> Vec<String> {
    tokens.into_iter().filter(|t| !stops.contains(t)).collect()
}

/// Default minimum stem length in code points.
pub const DEFAULT_MIN_STEM_LEN: usize = 3;

fn default_prefixes() -> Vec<String> {
    ["وال", "بال", "كال", "فال", "لل", "ال", "و"]
        .into_iter()
        .map(String::from)
        .collect()
}

fn default_suffixes() -> Vec<String> {
    ["ها", "ان", "ات", "ون", "ين", "يه", "ية", "ه", "ة", "ي", "ى"]
        .into_iter()
        .map(String::from)
        .collect()
}

/// Affix tables for the light stemmer. Lists are held sorted by decreasing
/// code-point length (ties keep their given order) so the first matching
/// affix that respects the length guard is also the longest one.
#[derive(Debug, Clone)]
pub struct StemmerConfig {
    prefixes: Vec<String>,
    suffixes: Vec<String>,
    min_stem_len: usize,
}

impl Default for StemmerConfig {
    fn default() -> Self {
        Self::new(default_prefixes(), default_suffixes(), DEFAULT_MIN_STEM_LEN)
            .expect("default affix tables are valid")
    }
}

impl StemmerConfig {
    pub fn new(
        prefixes: Vec<String>,
        suffixes: Vec<String>,
        min_stem_len: usize,
    ) -> Result<Self, TextError> {
        if min_stem_len < 2 {
            return Err(TextError::InvalidStemmer(format!(
                "min_stem_len must be at least 2, got {min_stem_len}"
            )));
        }
        if prefixes.iter().chain(&suffixes).any(|a| a.is_empty()) {
            return Err(TextError::InvalidStemmer(
                "affix lists may not contain empty strings".to_string(),
            ));
        }
        let mut prefixes = prefixes;
        let mut suffixes = suffixes;
        prefixes.sort_by_key(|a| std::cmp::Reverse(a.chars().count()));
        suffixes.sort_by_key(|a| std::cmp::Reverse(a.chars().count()));
        Ok(Self {
            prefixes,
            suffixes,
            min_stem_len,
        })
    }

    /// Loads an affix file with two sections, `[prefixes]` and `[suffixes]`,
    /// one affix per line. `#` lines are comments. The minimum stem length
    /// keeps its default.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, TextError> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|source| TextError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut prefixes = Vec::new();
        let mut suffixes = Vec::new();
        let mut section: Option<&mut Vec<String>> = None;
        for (no, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line {
                "[prefixes]" => section = Some(&mut prefixes),
                "[suffixes]" => section = Some(&mut suffixes),
                _ if line.starts_with('[') => {
                    return Err(TextError::StemmerFormat {
                        path: path.display().to_string(),
                        reason: format!("unknown section {line} on line {}", no + 1),
                    });
                }
                affix => match section.as_deref_mut() {
                    Some(list) => list.push(affix.to_string()),
                    None => {
                        return Err(TextError::StemmerFormat {
                            path: path.display().to_string(),
                            reason: format!(
                                "affix {affix:?} on line {} appears before any section header",
                                no + 1
                            ),
                        });
                    }
                },
            }
        }
        Self::new(prefixes, suffixes, DEFAULT_MIN_STEM_LEN)
    }

    pub fn prefixes(&self) -> &[String] {
        &self.prefixes
    }

    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }

    pub fn min_stem_len(&self) -> usize {
        self.min_stem_len
    }

    /// Stable content hash, used in preprocessing fingerprints.
    pub fn hash_hex(&self) -> String {
        let mut joined = String::new();
        for p in &self.prefixes {
            joined.push_str(p);
            joined.push('\n');
        }
        joined.push('\u{1f}');
        for s in &self.suffixes {
            joined.push_str(s);
            joined.push('\n');
        }
        joined.push('\u{1f}');
        joined.push_str(&self.min_stem_len.to_string());
        format!("{:016x}", fnv1a_64(joined.as_bytes()))
    }
}

/// Strips at most one prefix and then at most one suffix. An affix is
/// stripped only when the remainder keeps at least `min_stem_len` code
/// points; if no affix qualifies the token is returned unchanged.
pub fn light_stem(token: &str, cfg: &StemmerConfig) -> String {
    let mut chars: Vec<char> = token.chars().collect();
    for prefix in &cfg.prefixes {
        let plen = prefix.chars().count();
        if chars.len() >= plen + cfg.min_stem_len
            && prefix.chars().zip(chars.iter()).all(|(p, &c)| p == c)
        {
            chars.drain(..plen);
            break;
        }
    }
    for suffix in &cfg.suffixes {
        let slen = suffix.chars().count();
        if chars.len() >= slen + cfg.min_stem_len
            && suffix
                .chars()
                .zip(chars[chars.len() - slen..].iter())
                .all(|(s, &c)| s == c)
        {
            chars.truncate(chars.len() - slen);
            break;
        }
    }
    chars.into_iter().collect()
}

/// A document reduced to its token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessedDocument {
    pub source_id: String,
    pub tokens: Vec<String>,
}

impl ProcessedDocument {
    pub fn new(source_id: impl Into<String>, tokens: Vec<String>) -> Self {
        Self {
            source_id: source_id.into(),
            tokens,
        }
    }
}

/// Switches for the tail of the preprocessing chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreprocessOptions {
    /// Keep only the first occurrence of each token.
    pub dedupe: bool,
    /// Run the light stemmer over every token.
    pub stem: bool,
}

impl Default for PreprocessOptions {
    fn default() -> Self {
        Self {
            dedupe: true,
            stem: true,
        }
    }
}

/// Runs the full chain over one document: tokenize, normalize, drop empty
/// tokens, remove stop words, then optionally stem and deduplicate.
pub fn preprocess(
    doc: &LabeledDocument,
    profile: &NormalizationProfile,
    stops: &StopList,
    cfg: &StemmerConfig,
    options: PreprocessOptions,
) -> ProcessedDocument {
    preprocess_text(&doc.id, &doc.text, profile, stops, cfg, options)
}

/// Same as [`preprocess`] but over raw text with an explicit source id.
pub fn preprocess_text(
    source_id: &str,
    text: &str,
    profile: &NormalizationProfile,
    stops: &StopList,
    cfg: &StemmerConfig,
    options: PreprocessOptions,
) -> ProcessedDocument {
    let mut tokens: Vec<String> = tokenize(text)
        .into_iter()
        .map(|t| normalize(&t, profile))
        .filter(|t| !t.is_empty())
        .collect();
    tokens = remove_stopwords(tokens, stops);
    if options.stem {
        tokens = tokens.into_iter().map(|t| light_stem(&t, cfg)).collect();
    }
    if options.dedupe {
        let mut seen = HashSet::new();
        tokens.retain(|t| seen.insert(t.clone()));
    }
    ProcessedDocument::new(source_id, tokens)
}

/// Identifies one preprocessing configuration: the profile name plus content
/// hashes of the stemmer tables and the stop list. Models store the
/// fingerprint they were trained under and refuse documents prepared with a
/// different one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessFingerprint {
    pub profile: String,
    pub stemmer_hash: String,
    pub stoplist_hash: String,
}

impl fmt::Display for PreprocessFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.profile, self.stemmer_hash, self.stoplist_hash
        )
    }
}

impl PreprocessFingerprint {
    /// Parses the `profile:stemmer:stoplist` form used in model files.
    pub fn parse(s: &str) -> Option<Self> {
        let mut parts = s.split(':');
        let profile = parts.next()?.to_string();
        let stemmer_hash = parts.next()?.to_string();
        let stoplist_hash = parts.next()?.to_string();
        if parts.next().is_some() || profile.is_empty() {
            return None;
        }
        Some(Self {
            profile,
            stemmer_hash,
            stoplist_hash,
        })
    }
}

/// One configured preprocessing chain.
#[derive(Debug, Clone)]
pub struct Preprocessor {
    profile: NormalizationProfile,
    stops: StopList,
    stemmer: StemmerConfig,
    options: PreprocessOptions,
}

impl Preprocessor {
    pub fn new(
        profile: NormalizationProfile,
        stops: StopList,
        stemmer: StemmerConfig,
        options: PreprocessOptions,
    ) -> Self {
        Self {
            profile,
            stops,
            stemmer,
            options,
        }
    }

    /// The default chain: `system` profile, bundled stop list, default affix
    /// tables, stemming and deduplication on.
    pub fn default_system() -> Self {
        let profile = NormalizationProfile::system();
        let stops = StopList::default_arabic(&profile);
        Self::new(
            profile,
            stops,
            StemmerConfig::default(),
            PreprocessOptions::default(),
        )
    }

    pub fn process(&self, doc: &LabeledDocument) -> ProcessedDocument {
        preprocess(doc, &self.profile, &self.stops, &self.stemmer, self.options)
    }

    pub fn process_text(&self, source_id: &str, text: &str) -> ProcessedDocument {
        preprocess_text(
            source_id,
            text,
            &self.profile,
            &self.stops,
            &self.stemmer,
            self.options,
        )
    }

    pub fn fingerprint(&self) -> PreprocessFingerprint {
        // a disabled stemmer is a distinct stemming configuration, so the
        // stem toggle participates in the stemmer hash
        let stemmer_hash = if self.options.stem {
            self.stemmer.hash_hex()
        } else {
            format!("{:016x}", fnv1a_64(b"stemming-disabled"))
        };
        PreprocessFingerprint {
            profile: self.profile.name.clone(),
            stemmer_hash,
            stoplist_hash: self.stops.hash_hex(),
        }
    }

    pub fn profile(&self) -> &NormalizationProfile {
        &self.profile
    }

    pub fn stops(&self) -> &StopList {
        &self.stops
    }

    pub fn stemmer(&self) -> &StemmerConfig {
        &self.stemmer
    }

    pub fn options(&self) -> PreprocessOptions {
        self.options
    }

    pub fn with_options(mut self, options: PreprocessOptions) -> Self {
        self.options = options;
        self
    }
}

/// FNV-1a, 64-bit. Used for configuration fingerprints where a stable,
/// platform-independent hash matters and collision resistance does not.
fn fnv1a_64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
