"""Pydantic models for run configuration files."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from scriptnorm.alignment.needleman_wunsch import AlignmentParams
from scriptnorm.alignment.spelling_pairs import DEFAULT_VARIANT_CAP
from scriptnorm.corpus.cleaning import CleanConfig
from scriptnorm.inventory.inventory import SUPPORTED_LANGS
from scriptnorm.langid.model import LangIdParams
from scriptnorm.metrics.scores import MetricOptions
from scriptnorm.noise.datasets import ALL_LEVEL, MAX_SEED, Level


class LanguagesConfig(BaseModel):
    """Source and dominant language of a run."""

    src_lang: str
    dom_lang: str

    @field_validator("src_lang", "dom_lang")
    @classmethod
    def validate_lang(cls, v: str) -> str:
        if v not in SUPPORTED_LANGS:
            raise ValueError(
                f"unsupported language {v!r}; expected one of {sorted(SUPPORTED_LANGS)}"
            )
        return v

    @model_validator(mode="after")
    def validate_distinct(self) -> "LanguagesConfig":
        if self.src_lang == self.dom_lang:
            raise ValueError("src_lang and dom_lang must differ")
        return self


class PathsConfig(BaseModel):
    """Input files and the output directory. Declared inputs must exist."""

    corpus: Optional[Path] = None
    inventories: Optional[Path] = None
    rules: Optional[Path] = None
    lexicon: Optional[Path] = None
    output_dir: Path = Path("out")

    @field_validator("corpus", "inventories", "rules", "lexicon")
    @classmethod
    def validate_exists(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.exists():
            raise ValueError(f"path does not exist: {v}")
        return v


class NoiseSection(BaseModel):
    level: Level = ALL_LEVEL
    dedup: bool = True


class AlignmentSection(BaseModel):
    scoring: AlignmentParams = Field(default_factory=AlignmentParams)
    variant_cap: int = Field(default=DEFAULT_VARIANT_CAP, ge=1)
    prune_threshold: float = Field(default=0.1, ge=0.1, le=1.0)


class NormalizerSection(BaseModel):
    lm_order: int = Field(default=5, ge=1)
    alpha: float = Field(default=0.1, gt=0)
    self_weight: float = Field(default=1.0, gt=0)
    beam_width: int = Field(default=8, ge=1)


class RunConfig(BaseModel):
    """Complete configuration of a pipeline run."""

    model_config = ConfigDict(extra="forbid")

    languages: Optional[LanguagesConfig] = None
    paths: PathsConfig = Field(default_factory=PathsConfig)
    seed: Optional[int] = Field(default=None, ge=0, le=MAX_SEED)
    threads: Optional[int] = Field(default=None, ge=1)
    noise: NoiseSection = Field(default_factory=NoiseSection)
    clean: CleanConfig = Field(default_factory=CleanConfig)
    alignment: AlignmentSection = Field(default_factory=AlignmentSection)
    metrics: MetricOptions = Field(default_factory=MetricOptions)
    langid: LangIdParams = Field(default_factory=LangIdParams)
    normalizer: NormalizerSection = Field(default_factory=NormalizerSection)
