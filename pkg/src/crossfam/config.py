# crossfam/config.py

import logging  # quản lý log theo từng module
from pathlib import Path  # thao tác đường dẫn
from typing import Optional

from dotenv import load_dotenv  # đọc file .env vào biến môi trường
from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# --- Tải biến môi trường từ file .env ở thư mục gốc ---
load_dotenv()

# Project root directory (parent của thư mục src)
BASE_DIR = Path(__file__).resolve().parents[2]

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# --- Giới hạn cứng của từng module (không thể vượt qua bằng cấu hình) ---
MAX_GROUND_SIZE = 128
BETA_GUARD_MAX = 26
REFERENCE_GUARD_MAX = 16
LABELING_BITS_MAX = 40
UNIQUENESS_BITS_MAX = 34
SYMMETRY_GUARD_MAX = 12
POWERSET_GUARD_MAX = 16
FAMILY_SIZE_MAX = 1 << 16


class Guards(BaseModel):
    """Size guards of the exact searches, validated against the module maxima."""

    model_config = ConfigDict(frozen=True)

    beta: int = Field(24, ge=1, le=BETA_GUARD_MAX)                 # |F| tối đa khi duyệt mọi họ con
    reference: int = Field(14, ge=1, le=REFERENCE_GUARD_MAX)       # |F| tối đa cho phép duyệt không cắt tỉa
    labeling_bits: int = Field(34, ge=1, le=LABELING_BITS_MAX)     # (k+1)^|F|/k! <= 2^bits
    uniqueness_bits: int = Field(26, ge=1, le=UNIQUENESS_BITS_MAX) # liệt kê mọi nghiệm tối ưu
    symmetry: int = Field(10, ge=1, le=SYMMETRY_GUARD_MAX)         # |F| tối đa cho tìm tự đẳng cấu vét cạn
    powerset: int = Field(12, ge=0, le=POWERSET_GUARD_MAX)         # n tối đa cho 2^[n]
    family_size: int = Field(4096, ge=1, le=FAMILY_SIZE_MAX)       # số tập tối đa một generator sinh ra


class Settings(BaseSettings):
    """
    Cấu hình ứng dụng, tự động load từ biến môi trường CROSSFAM_* hoặc file .env
    """
    model_config = SettingsConfigDict(
        env_prefix="CROSSFAM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_dir: Path = Path("log")          # thư mục chứa file log
    log_level: str = "INFO"              # mức log tối thiểu
    log_to_file: bool = False            # ghi thêm log ra file trong log_dir
    output_dir: Path = Path("reports")   # --out tương đối được tính từ thư mục này

    beta_guard: int = Field(24, ge=1, le=BETA_GUARD_MAX)
    reference_guard: int = Field(14, ge=1, le=REFERENCE_GUARD_MAX)
    labeling_guard_bits: int = Field(34, ge=1, le=LABELING_BITS_MAX)
    uniqueness_guard_bits: int = Field(26, ge=1, le=UNIQUENESS_BITS_MAX)
    symmetry_guard: int = Field(10, ge=1, le=SYMMETRY_GUARD_MAX)
    powerset_guard: int = Field(12, ge=0, le=POWERSET_GUARD_MAX)
    family_size_guard: int = Field(4096, ge=1, le=FAMILY_SIZE_MAX)

    threads: int = Field(1, ge=1, le=64)  # số luồng chạy suite
    seed: int = 1729                      # seed mặc định cho mọi phép thử ngẫu nhiên

    def guards(self) -> Guards:
        return Guards(
            beta=self.beta_guard,
            reference=self.reference_guard,
            labeling_bits=self.labeling_guard_bits,
            uniqueness_bits=self.uniqueness_guard_bits,
            symmetry=self.symmetry_guard,
            powerset=self.powerset_guard,
            family_size=self.family_size_guard,
        )


# Khởi tạo cấu hình từ biến môi trường
settings = Settings()


def resolve_path(path: Path) -> Path:
    """Đường dẫn tương đối được tính từ thư mục gốc của project."""
    path = Path(path)
    if not path.is_absolute():
        path = BASE_DIR / path
    return path


def current_guards(guards: Optional[Guards] = None) -> Guards:
    return guards if guards is not None else settings.guards()


def resolve_output(path: Path) -> Path:
    """Đường dẫn báo cáo tương đối nằm trong output_dir."""
    path = Path(path)
    if path.is_absolute():
        return path
    return resolve_path(settings.output_dir) / path


def ensure_directories() -> None:
    """Tạo thư mục log và thư mục báo cáo nếu chưa tồn tại."""
    resolve_path(settings.log_dir).mkdir(parents=True, exist_ok=True)
    resolve_path(settings.output_dir).mkdir(parents=True, exist_ok=True)


def get_logger(name: str, log_file: Optional[str] = None) -> logging.Logger:
    """
    Logger theo module: một StreamHandler, thêm FileHandler trong log_dir khi bật log_to_file.
    Chỉ gắn handler một lần cho mỗi logger.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        logger.setLevel(settings.log_level.upper())
        fmt = logging.Formatter(LOG_FORMAT)
        stream_h = logging.StreamHandler()
        stream_h.setFormatter(fmt)
        logger.addHandler(stream_h)
        if settings.log_to_file:
            log_dir = resolve_path(settings.log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)
            file_h = logging.FileHandler(log_dir / (log_file or "crossfam.log"), encoding="utf-8")
            file_h.setFormatter(fmt)
            logger.addHandler(file_h)
        logger.propagate = False
    return logger
