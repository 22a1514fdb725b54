"""
루트 시스템 압축 검증 API 패키지
"""
