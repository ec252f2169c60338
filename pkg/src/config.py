"""Configuration management"""

import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class GroupConfig(BaseModel):
    """Permutation group engine parameters"""
    enumeration_bound: int = Field(default=1_000_000, description="Max elements listed by elements()")
    random_rounds: int = Field(default=20, description="Consecutive trivial sifts ending the random phase")
    seed: int = Field(default=20130501)


class DistanceConfig(BaseModel):
    """Minimum distance engine parameters"""
    exhaustive_max_k: int = Field(default=28, description="Largest dimension enumerated exhaustively")
    chunk_bits: int = Field(default=16, description="log2 of codewords per numpy chunk")


class SearchConfig(BaseModel):
    """Automorphism / canonical form search parameters"""
    max_length: int = Field(default=72)
    brute_force_length: int = Field(default=8, description="Lengths at or below this use all n! permutations")
    canonical_leaf_budget: int = Field(default=200_000)


class PipelineConfig(BaseModel):
    """Proof pipeline parameters"""
    n: int = Field(default=72)
    target_d: int = Field(default=16)
    half_target_d: int = Field(default=8)
    pair: str = Field(default="alpha,beta")


class WorkerConfig(BaseModel):
    """Worker pool parameters"""
    threads: int = Field(default=1)


class ReportConfig(BaseModel):
    """Report document parameters"""
    include_timing: bool = Field(default=False)
    metrics_file: Optional[str] = Field(default=None)


class LoggingConfig(BaseModel):
    """Logging parameters"""
    level: str = Field(default="INFO")
    format: str = Field(default="text", description="text or json")
    file: Optional[str] = Field(default=None)


class Settings(BaseSettings):
    """Environment settings (FIXGLUE_* variables, .env file)"""

    model_config = SettingsConfigDict(env_prefix="FIXGLUE_", env_file=".env", case_sensitive=False, extra="ignore")

    threads: Optional[int] = None
    log_level: Optional[str] = None
    log_format: Optional[str] = None
    log_file: Optional[str] = None
    config_file: str = "config.yaml"
    reference_db: Optional[str] = None


class ConfigManager:
    """Manages application configuration"""

    def __init__(self, config_file: Optional[str] = None):
        self.settings = Settings()
        self.config_file = config_file or self.settings.config_file
        self.yaml_config = self._load_yaml()

    def _load_yaml(self) -> Dict[str, Any]:
        """Load YAML configuration"""
        if os.path.exists(self.config_file):
            with open(self.config_file, 'r') as f:
                return yaml.safe_load(f) or {}
        return {}

    def _section(self, name: str) -> Dict[str, Any]:
        return self.yaml_config.get(name, {}) or {}

    @property
    def groups(self) -> GroupConfig:
        """Get permutation group configuration"""
        return GroupConfig(**self._section('groups'))

    @property
    def distance(self) -> DistanceConfig:
        """Get minimum distance configuration"""
        return DistanceConfig(**self._section('distance'))

    @property
    def search(self) -> SearchConfig:
        """Get automorphism search configuration"""
        return SearchConfig(**self._section('search'))

    @property
    def pipeline(self) -> PipelineConfig:
        """Get pipeline configuration"""
        return PipelineConfig(**self._section('pipeline'))

    @property
    def workers(self) -> WorkerConfig:
        """Get worker configuration; FIXGLUE_THREADS overrides the YAML value"""
        section = dict(self._section('workers'))
        if self.settings.threads is not None:
            section['threads'] = self.settings.threads
        return WorkerConfig(**section)

    @property
    def report(self) -> ReportConfig:
        """Get report configuration"""
        return ReportConfig(**self._section('report'))

    @property
    def logging(self) -> LoggingConfig:
        """Get logging configuration"""
        section = dict(self._section('logging'))
        overrides = {
            'level': self.settings.log_level,
            'format': self.settings.log_format,
            'file': self.settings.log_file,
        }
        section.update({k: v for k, v in overrides.items() if v is not None})
        return LoggingConfig(**section)


# Global config instance
config = ConfigManager()
