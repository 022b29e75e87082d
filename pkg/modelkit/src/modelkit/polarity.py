"""Minimal lexicon polarity scorer.

A verse scores the mean valence of its lexicon hits, clipped to [-1, 1];
verses with no hits score 0.0.  This is a lightweight stand-in for a
full lexicon toolkit, sufficient for producing an optional signal the
report layer plots alongside the weighted label polarity.
"""

from __future__ import annotations

import re

_WORD_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*", re.UNICODE)

# compact valence lexicon; scores in [-1, 1]
LEXICON: dict[str, float] = {
    "good": 0.6, "great": 0.8, "excellent": 0.9, "happy": 0.8, "happiness": 0.8,
    "joy": 0.8, "joyful": 0.8, "glad": 0.6, "pleased": 0.6, "delight": 0.8,
    "delighted": 0.8, "love": 0.7, "loved": 0.7, "lovely": 0.7, "wonderful": 0.9,
    "fortunate": 0.6, "fortune": 0.4, "luck": 0.4, "lucky": 0.6, "peace": 0.5,
    "peaceful": 0.6, "calm": 0.4, "kind": 0.5, "friend": 0.4, "friendly": 0.5,
    "win": 0.5, "won": 0.5, "victory": 0.6, "success": 0.6, "successful": 0.6,
    "laugh": 0.5, "laughed": 0.5, "smile": 0.5, "smiled": 0.5, "hope": 0.4,
    "hopeful": 0.6, "proud": 0.5, "pride": 0.3, "fine": 0.3, "well": 0.2,
    "best": 0.8, "better": 0.4, "rich": 0.4, "comfort": 0.5, "comforted": 0.5,
    "bad": -0.6, "terrible": -0.9, "awful": -0.8, "horrible": -0.9, "sad": -0.7,
    "sadness": -0.7, "unhappy": -0.7, "misery": -0.8, "miserable": -0.8,
    "angry": -0.7, "anger": -0.6, "furious": -0.8, "hate": -0.8, "hated": -0.8,
    "fear": -0.6, "afraid": -0.6, "scared": -0.6, "terror": -0.8, "cry": -0.5,
    "cried": -0.5, "tears": -0.4, "weep": -0.6, "pain": -0.6, "painful": -0.7,
    "hurt": -0.6, "die": -0.8, "died": -0.8, "dead": -0.7,
    "death": -0.7, "kill": -0.8, "killed": -0.8, "lose": -0.4, "lost": -0.4,
    "defeat": -0.6, "defeated": -0.6, "fail": -0.6, "failed": -0.6,
    "failure": -0.7, "poor": -0.4, "wretched": -0.7, "curse": -0.6,
    "cursed": -0.7, "shame": -0.6, "ashamed": -0.6, "disgrace": -0.7,
    "beaten": -0.6, "worst": -0.8, "worse": -0.5, "trouble": -0.5,
    "unfortunate": -0.6, "unfortunately": -0.5, "devil": -0.5, "devils": -0.5,
}


def lexicon_polarity(text: str) -> float:
    """Mean valence of lexicon hits in ``text``; 0.0 with no hits."""
    scores = [LEXICON[w] for w in _WORD_RE.findall(text.lower()) if w in LEXICON]
    if not scores:
        return 0.0
    value = sum(scores) / len(scores)
    return max(-1.0, min(1.0, value))
